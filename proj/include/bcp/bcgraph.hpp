#pragma once

#include "bcp/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bcp {

struct ClusterModel; // cluster.hpp

struct BcBuildOptions {
    std::uint32_t min_weight = 1;
    bool include_unknown_year_refs = false;
};

struct BcBuildReport {
    std::uint64_t slice_papers = 0;
    std::uint64_t kept_nodes = 0;
    std::uint64_t kept_edges = 0;
    // size -> number of discarded components of that size (size 1 = isolated)
    std::map<std::uint64_t, std::uint64_t> discarded_components;

    bool operator==(const BcBuildReport&) const = default;
};

// Weighted undirected bibliographic-coupling graph for one year slice,
// restricted to the largest connected component. Immutable after build.
class BcGraph {
  public:
    BcGraph() = default;
    // nodes must be sorted; edges are (i, j, weight) with i < j, unique
    BcGraph(std::vector<std::string> nodes, std::vector<std::string> journals,
            const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>& edges,
            int year, BcBuildOptions options, BcBuildReport report);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    std::uint64_t edge_count() const { return adj_.size() / 2; }
    int year() const { return year_; }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& doi(std::uint32_t i) const { return nodes_[i]; }
    const std::vector<std::string>& journals() const { return journals_; }
    std::optional<std::uint32_t> index_of(std::string_view doi) const;

    // (neighbor index, weight), sorted by neighbor index
    std::span<const std::pair<std::uint32_t, std::uint32_t>> neighbors(std::uint32_t i) const {
        return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
    }
    std::uint32_t degree(std::uint32_t i) const {
        return static_cast<std::uint32_t>(offsets_[i + 1] - offsets_[i]);
    }
    std::uint32_t weight(std::uint32_t i, std::uint32_t j) const; // 0 when absent

    const BcBuildOptions& options() const { return options_; }
    const BcBuildReport& build_report() const { return report_; }

    bool same_topology(const BcGraph& o) const {
        return nodes_ == o.nodes_ && offsets_ == o.offsets_ && adj_ == o.adj_;
    }

  private:
    std::vector<std::string> nodes_;    // sorted dois
    std::vector<std::string> journals_; // aligned with nodes_
    std::vector<std::uint64_t> offsets_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> adj_;
    int year_ = 0;
    BcBuildOptions options_;
    BcBuildReport report_;
};

// Shared-reference count of two reference sets, restricted to references
// published strictly before cutoff_year. References whose year is unknown
// (no metadata record) are skipped unless include_unknown_year_refs.
std::uint32_t bc_weight(std::span<const std::string> refs_i, std::span<const std::string> refs_j,
                        int cutoff_year, const Corpus& corpus,
                        bool include_unknown_year_refs = false);

// Inverted-index construction over the year slice; parallelized over
// cited-paper buckets. Throws when the slice is empty.
BcGraph build_bc_graph(const Corpus& corpus, int year, BcBuildOptions options = {});

// Counts of the node's BC neighbors per assigned cluster label.
std::map<int, std::uint32_t> neighbor_cluster_profile(const BcGraph& graph,
                                                      const ClusterModel& model,
                                                      std::string_view node);

// stem.edges.csv (doi_i,doi_j,weight) + stem.meta.json (nodes, year, report)
void save_bc_graph(const BcGraph& graph, const std::string& stem);
BcGraph load_bc_graph(const std::string& stem);

} // namespace bcp
