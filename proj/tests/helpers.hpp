#pragma once

#include "bcp/bcgraph.hpp"
#include "bcp/corpus.hpp"
#include "bcp/rng.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <tuple>
#include <unistd.h>
#include <vector>

namespace testutil {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("bcp_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline bcp::CorpusRecord record(std::string doi, int year, bcp::ArticleType type,
                                std::vector<std::string> pacs = {},
                                std::vector<std::string> authors = {"someone"}) {
    bcp::CorpusRecord r;
    r.doi = std::move(doi);
    r.title = "t";
    r.date = bcp::Date{year, 6, 15};
    r.journal = "J";
    r.authors = std::move(authors);
    r.pacs = std::move(pacs);
    r.type = type;
    return r;
}

// graph over nodes n00..nNN from an explicit weighted edge list
inline bcp::BcGraph graph_from_edges(
    std::uint32_t n, const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>& edges,
    int year = 1991) {
    std::vector<std::string> nodes;
    for (std::uint32_t i = 0; i < n; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "n%02u", i);
        nodes.push_back(buf);
    }
    std::vector<std::string> journals(n, "J");
    bcp::BcBuildReport rep;
    rep.slice_papers = n;
    rep.kept_nodes = n;
    rep.kept_edges = edges.size();
    return bcp::BcGraph(std::move(nodes), std::move(journals), edges, year, {}, rep);
}

// random connected weighted graph: a random spanning tree plus extra edges
inline bcp::BcGraph random_connected_graph(bcp::Rng& rng, std::uint32_t n,
                                           std::uint32_t max_weight, double extra_edge_prob) {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t v = 1; v < n; ++v) {
        auto u = static_cast<std::uint32_t>(rng.next_index(v));
        edges.emplace_back(u, v, static_cast<std::uint32_t>(rng.next_int(1, max_weight)));
        seen.emplace_back(u, v);
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (std::find(seen.begin(), seen.end(), std::make_pair(i, j)) != seen.end())
                continue;
            if (rng.next_real() < extra_edge_prob)
                edges.emplace_back(i, j, static_cast<std::uint32_t>(rng.next_int(1, max_weight)));
        }
    std::sort(edges.begin(), edges.end());
    return graph_from_edges(n, edges);
}

inline std::string read_all(const std::string& path) { return bcp::read_file(path); }

} // namespace testutil
