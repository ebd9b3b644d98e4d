#include "reference.hpp"

#include <algorithm>
#include <queue>

namespace bcp {
namespace ref {

std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>
bc_pairwise_weights(const Corpus& corpus, const std::vector<std::string>& slice, int cutoff_year,
                    bool include_unknown_year_refs) {
    // per-paper eligible reference sets, then straight pairwise intersection
    std::vector<std::vector<std::string>> refs(slice.size());
    for (size_t i = 0; i < slice.size(); ++i) {
        for (const auto& r : corpus.references_of(slice[i])) {
            const CorpusRecord* rec = corpus.find(r);
            if (rec ? rec->date.year < cutoff_year : include_unknown_year_refs)
                refs[i].push_back(r);
        }
        std::sort(refs[i].begin(), refs[i].end());
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> out;
    for (std::uint32_t i = 0; i < slice.size(); ++i)
        for (std::uint32_t j = i + 1; j < slice.size(); ++j) {
            std::vector<std::string> common;
            std::set_intersection(refs[i].begin(), refs[i].end(), refs[j].begin(), refs[j].end(),
                                  std::back_inserter(common));
            if (!common.empty())
                out[{i, j}] = static_cast<std::uint32_t>(common.size());
        }
    return out;
}

std::vector<std::vector<std::uint32_t>>
components_bfs(std::uint32_t n,
               const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>& edges) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& [pair, w] : edges) {
        (void)w;
        adj[pair.first].push_back(pair.second);
        adj[pair.second].push_back(pair.first);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::uint32_t>> comps;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<std::uint32_t> comp;
        std::queue<std::uint32_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            comp.push_back(u);
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace ref
} // namespace bcp
