#include "bcp/bcgraph.hpp"

#include "bcp/cluster.hpp"

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

namespace bcp {

using nlohmann::json;
using nlohmann::ordered_json;

BcGraph::BcGraph(std::vector<std::string> nodes, std::vector<std::string> journals,
                 const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>& edges,
                 int year, BcBuildOptions options, BcBuildReport report)
    : nodes_(std::move(nodes)), journals_(std::move(journals)), year_(year), options_(options),
      report_(std::move(report)) {
    const std::uint32_t n = node_count();
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& [i, j, w] : edges) {
        (void)w;
        ++deg[i];
        ++deg[j];
    }
    offsets_.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        offsets_[i + 1] = offsets_[i] + deg[i];
    adj_.resize(offsets_[n]);
    std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [i, j, w] : edges) {
        adj_[fill[i]++] = {j, w};
        adj_[fill[j]++] = {i, w};
    }
    for (std::uint32_t i = 0; i < n; ++i)
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
}

std::optional<std::uint32_t> BcGraph::index_of(std::string_view doi) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), doi);
    if (it == nodes_.end() || *it != doi)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::uint32_t BcGraph::weight(std::uint32_t i, std::uint32_t j) const {
    auto row = neighbors(i);
    auto it = std::lower_bound(row.begin(), row.end(), std::pair<std::uint32_t, std::uint32_t>{j, 0},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == row.end() || it->first != j)
        return 0;
    return it->second;
}

std::uint32_t bc_weight(std::span<const std::string> refs_i, std::span<const std::string> refs_j,
                        int cutoff_year, const Corpus& corpus, bool include_unknown_year_refs) {
    // reference lists from Corpus are sorted; intersect with two pointers
    std::uint32_t count = 0;
    size_t a = 0, b = 0;
    while (a < refs_i.size() && b < refs_j.size()) {
        int cmp = refs_i[a].compare(refs_j[b]);
        if (cmp < 0) {
            ++a;
        } else if (cmp > 0) {
            ++b;
        } else {
            const CorpusRecord* rec = corpus.find(refs_i[a]);
            if (rec ? rec->date.year < cutoff_year : include_unknown_year_refs)
                ++count;
            ++a;
            ++b;
        }
    }
    return count;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

BcGraph build_bc_graph(const Corpus& corpus, int year, BcBuildOptions options) {
    std::vector<std::string> slice = year_slice(corpus, year);
    if (slice.empty())
        throw std::runtime_error("build_bc_graph: empty slice for year " + std::to_string(year));
    const auto n = static_cast<std::uint32_t>(slice.size());

    // inverted index: eligible cited paper -> slice papers citing it
    std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (const auto& ref : corpus.references_of(slice[i])) {
            const CorpusRecord* rec = corpus.find(ref);
            bool eligible = rec ? rec->date.year < year : options.include_unknown_year_refs;
            if (eligible)
                buckets[ref].push_back(i);
        }
    }
    std::vector<const std::vector<std::uint32_t>*> bucket_list;
    bucket_list.reserve(buckets.size());
    for (const auto& [doi, members] : buckets)
        if (members.size() > 1)
            bucket_list.push_back(&members);

    // each co-citing pair is generated once per shared reference; integer
    // counts merge deterministically whatever the thread partition
    std::unordered_map<std::uint64_t, std::uint32_t> pair_count;
#ifdef _OPENMP
    int nthreads = omp_get_max_threads();
#else
    int nthreads = 1;
#endif
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> partial(nthreads);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(bucket_list.size()); ++b) {
#ifdef _OPENMP
        auto& local = partial[omp_get_thread_num()];
#else
        auto& local = partial[0];
#endif
        const auto& members = *bucket_list[b];
        for (size_t x = 0; x < members.size(); ++x)
            for (size_t y = x + 1; y < members.size(); ++y) {
                std::uint64_t key = (static_cast<std::uint64_t>(members[x]) << 32) | members[y];
                ++local[key];
            }
    }
    for (auto& p : partial)
        for (const auto& [k, c] : p)
            pair_count[k] += c;

    // threshold, then largest component on the surviving edges
    UnionFind uf(n);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> all_edges;
    all_edges.reserve(pair_count.size());
    for (const auto& [key, w] : pair_count) {
        if (w < options.min_weight)
            continue;
        auto i = static_cast<std::uint32_t>(key >> 32);
        auto j = static_cast<std::uint32_t>(key & 0xffffffffu);
        all_edges.emplace_back(i, j, w);
        uf.unite(i, j);
    }

    std::unordered_map<std::uint32_t, std::uint64_t> comp_size;
    for (std::uint32_t i = 0; i < n; ++i)
        ++comp_size[uf.find(i)];
    std::unordered_map<std::uint32_t, std::uint64_t> comp_weight;
    for (const auto& [i, j, w] : all_edges)
        comp_weight[uf.find(i)] += w;

    // pick by node count, then total edge weight, then smallest root
    // (roots are minimal member indices, so the last tie-break is by the
    // lexicographically smallest doi)
    std::uint32_t best = uf.find(0);
    for (const auto& [root, size] : comp_size) {
        auto wb = comp_weight.count(best) ? comp_weight[best] : 0;
        auto wr = comp_weight.count(root) ? comp_weight[root] : 0;
        auto tb = std::tuple(comp_size[best], wb, std::numeric_limits<std::uint32_t>::max() - best);
        auto tr = std::tuple(size, wr, std::numeric_limits<std::uint32_t>::max() - root);
        if (tr > tb)
            best = root;
    }

    BcBuildReport report;
    report.slice_papers = n;
    for (const auto& [root, size] : comp_size)
        if (root != best)
            ++report.discarded_components[size];

    std::vector<std::uint32_t> remap(n, UINT32_MAX);
    std::vector<std::string> kept;
    std::vector<std::string> journals;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (uf.find(i) == best) {
            remap[i] = static_cast<std::uint32_t>(kept.size());
            kept.push_back(slice[i]); // slice is sorted, so kept is too
            const CorpusRecord* rec = corpus.find(slice[i]);
            journals.push_back(rec ? rec->journal : "");
        }
    }
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
    edges.reserve(all_edges.size());
    for (const auto& [i, j, w] : all_edges)
        if (remap[i] != UINT32_MAX && remap[j] != UINT32_MAX)
            edges.emplace_back(std::min(remap[i], remap[j]), std::max(remap[i], remap[j]), w);
    std::sort(edges.begin(), edges.end());

    report.kept_nodes = kept.size();
    report.kept_edges = edges.size();
    return BcGraph(std::move(kept), std::move(journals), edges, year, options, std::move(report));
}

std::map<int, std::uint32_t> neighbor_cluster_profile(const BcGraph& graph,
                                                      const ClusterModel& model,
                                                      std::string_view node) {
    auto idx = graph.index_of(node);
    if (!idx)
        throw std::runtime_error("neighbor_cluster_profile: unknown node " + std::string(node));
    std::map<int, std::uint32_t> hist;
    for (const auto& [j, w] : graph.neighbors(*idx)) {
        (void)w;
        ++hist[model.assignment.at(j)];
    }
    return hist;
}

void save_bc_graph(const BcGraph& graph, const std::string& stem) {
    std::string csv = "doi_i,doi_j,weight\n";
    for (std::uint32_t i = 0; i < graph.node_count(); ++i)
        for (const auto& [j, w] : graph.neighbors(i))
            if (i < j) {
                csv += csv_escape(graph.doi(i));
                csv += ',';
                csv += csv_escape(graph.doi(j));
                csv += ',';
                csv += std::to_string(w);
                csv += '\n';
            }
    write_file_atomic(stem + ".edges.csv", csv);

    ordered_json meta;
    meta["format"] = "bcp-graph";
    meta["version"] = 1;
    meta["year"] = graph.year();
    meta["min_weight"] = graph.options().min_weight;
    meta["include_unknown_year_refs"] = graph.options().include_unknown_year_refs;
    meta["nodes"] = graph.nodes();
    meta["journals"] = graph.journals();
    ordered_json rep;
    rep["slice_papers"] = graph.build_report().slice_papers;
    rep["kept_nodes"] = graph.build_report().kept_nodes;
    rep["kept_edges"] = graph.build_report().kept_edges;
    ordered_json disc = ordered_json::object();
    for (const auto& [size, count] : graph.build_report().discarded_components)
        disc[std::to_string(size)] = count;
    rep["discarded_components"] = disc;
    meta["build_report"] = rep;
    write_file_atomic(stem + ".meta.json", meta.dump(2) + "\n");
}

BcGraph load_bc_graph(const std::string& stem) {
    json meta = json::parse(read_file(stem + ".meta.json"));
    if (!meta.contains("format") || meta["format"] != "bcp-graph")
        throw std::runtime_error("not a graph meta file: " + stem + ".meta.json");
    std::vector<std::string> nodes = meta["nodes"].get<std::vector<std::string>>();
    std::vector<std::string> journals = meta["journals"].get<std::vector<std::string>>();
    BcBuildOptions options;
    options.min_weight = meta["min_weight"].get<std::uint32_t>();
    options.include_unknown_year_refs = meta["include_unknown_year_refs"].get<bool>();
    BcBuildReport report;
    report.slice_papers = meta["build_report"]["slice_papers"].get<std::uint64_t>();
    report.kept_nodes = meta["build_report"]["kept_nodes"].get<std::uint64_t>();
    report.kept_edges = meta["build_report"]["kept_edges"].get<std::uint64_t>();
    for (const auto& [k, v] : meta["build_report"]["discarded_components"].items())
        report.discarded_components[std::stoull(k)] = v.get<std::uint64_t>();

    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        index[nodes[i]] = i;

    std::ifstream f(stem + ".edges.csv");
    if (!f)
        throw std::runtime_error("cannot open: " + stem + ".edges.csv");
    std::string line;
    std::getline(f, line);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
    std::uint64_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        auto fields = csv_parse_line(line);
        if (fields.size() != 3)
            throw std::runtime_error(stem + ".edges.csv:" + std::to_string(lineno) + ": bad row");
        auto it1 = index.find(fields[0]);
        auto it2 = index.find(fields[1]);
        if (it1 == index.end() || it2 == index.end())
            throw std::runtime_error(stem + ".edges.csv:" + std::to_string(lineno) +
                                     ": edge endpoint not in node list");
        edges.emplace_back(it1->second, it2->second,
                           static_cast<std::uint32_t>(std::stoul(fields[2])));
    }
    int year = meta["year"].get<int>();
    return BcGraph(std::move(nodes), std::move(journals), edges, year, options, std::move(report));
}

} // namespace bcp
