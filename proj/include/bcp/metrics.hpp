#pragma once

#include "bcp/centrality.hpp"
#include "bcp/cluster.hpp"
#include "bcp/corpus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcp {

struct PaperMetrics {
    std::string doi;
    std::uint32_t degree = 0;
    double betweenness = 0.0;
    double closeness = 0.0;
    double distance = 0.0;
    std::optional<double> pacs_entropy;
    double pacs_coverage = 0.0;
    std::uint32_t ref_length = 0;
    std::vector<std::uint64_t> citations; // aligned with MetricsTable::horizons
};

struct MetricsTable {
    std::vector<int> horizons; // years, ascending (default 2, 10, 20)
    std::vector<PaperMetrics> rows;
};

// Citations arriving within `horizon_years` of publication (citing date
// <= publication date + horizon, calendar arithmetic). Citing papers
// without a dated metadata record are not countable.
std::uint64_t citation_horizon(const Corpus& corpus, std::string_view doi, int horizon_years);

struct PacsDiversity {
    std::optional<double> entropy; // bits; present iff coverage > threshold
    double coverage = 0.0;         // fraction of references with PACS metadata
};

// Shannon entropy of the multiset of PACS codes over all referenced papers
// that carry PACS metadata. pacs_depth > 0 truncates codes to that many
// dot-separated segments before counting.
PacsDiversity pacs_entropy(const Corpus& corpus, std::string_view doi, double coverage_threshold,
                           int pacs_depth = 0);

std::string truncate_pacs(const std::string& code, int depth);

struct MetricsOptions {
    std::vector<int> horizons = {2, 10, 20};
    double pacs_coverage_threshold = 0.8;
    EdgeLength edge_length = EdgeLength::inverse;
    int pacs_depth = 0; // 0 = full code granularity
};

// One row per graph node; model must be fit on this graph and every node
// must have a corpus record.
MetricsTable assemble_metrics(const BcGraph& graph, const ClusterModel& model,
                              const Corpus& corpus, const MetricsOptions& options = {});

// Columns: doi, degree, betweenness, closeness, distance, pacs_entropy,
// pacs_coverage, ref_length, c<h> per horizon, rate<first>, rate<last>,
// entropy_per_ref. Optional cells are left empty.
void write_metrics_csv(const MetricsTable& table, const std::string& path);

} // namespace bcp
