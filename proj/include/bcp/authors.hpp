#pragma once

#include "bcp/cluster.hpp"
#include "bcp/corpus.hpp"

#include <map>
#include <string>
#include <vector>

namespace bcp {

struct AuthorRecord {
    std::string author_key; // normalized name
    std::vector<std::pair<std::string, int>> papers; // (doi, year), window papers
    std::size_t n_papers = 0;
    // yearly means over papers inside that year's BC largest component,
    // then averaged over the years with at least one such paper; NaN when
    // none of the author's papers ever entered a largest component
    double avg_distance = 0.0;
    double avg_degree = 0.0;
    double avg_betweenness = 0.0;
    double avg_closeness = 0.0;
    double avg_ref_length = 0.0;
    std::uint64_t citations_short = 0; // citing date <= Dec 31 of short year
    std::uint64_t citations_long = 0;
};

struct YearNetwork {
    const BcGraph* graph = nullptr;
    const ClusterModel* model = nullptr;
};

// Authors keyed by the exact normalized name string; no disambiguation.
// Every window year must have a graph/model entry.
std::vector<AuthorRecord> build_author_table(const Corpus& corpus, int window_lo, int window_hi,
                                             const std::map<int, YearNetwork>& per_year,
                                             int short_horizon_year, int long_horizon_year);

void write_author_csv(const std::vector<AuthorRecord>& table, const std::string& path);

} // namespace bcp
