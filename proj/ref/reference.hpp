#pragma once

// Serial reference implementations. These deliberately take the slow,
// obvious route (pairwise intersections, exhaustive path enumeration,
// dense distances, textbook normal equations) and stay independent of the
// optimized kernels in src/; tests compare the two and the bench tool
// times them against each other.

#include "bcp/bcgraph.hpp"
#include "bcp/centrality.hpp"
#include "bcp/cluster.hpp"
#include "bcp/corpus.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace bcp {
namespace ref {

// O(n^2) pairwise shared-reference counts over a year slice, with the same
// pre-cutoff-year rule as the production builder. Keys are (i, j), i < j,
// indices into the sorted slice; zero-weight pairs are absent.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>
bc_pairwise_weights(const Corpus& corpus, const std::vector<std::string>& slice, int cutoff_year,
                    bool include_unknown_year_refs = false);

// connected components by breadth-first search over an explicit edge set
std::vector<std::vector<std::uint32_t>>
components_bfs(std::uint32_t n,
               const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>& edges);

// all-pairs shortest paths, Floyd-Warshall
std::vector<std::vector<double>> floyd_warshall(const BcGraph& graph,
                                                EdgeLength mode = EdgeLength::inverse);

// Betweenness by exhaustive enumeration of every simple path between every
// pair (n <= 12); shortest-path ties use the shared 1e-12 relative rule.
std::vector<double> betweenness_exhaustive(const BcGraph& graph,
                                           EdgeLength mode = EdgeLength::inverse);

// plain serial Brandes, written separately from the parallel kernel
std::vector<double> betweenness_brandes_serial(const BcGraph& graph,
                                               EdgeLength mode = EdgeLength::inverse);

// closeness from the Floyd-Warshall matrix
std::vector<double> closeness_from_apsp(const std::vector<std::vector<double>>& dist);

// dense-formula normalized Hamming distance (no sparse shortcut)
double hamming_dense(const std::vector<double>& row, const std::vector<double>& center);

// serial nearest-center assignment over dense rows
struct DenseAssignment {
    std::vector<int> labels;
    std::vector<double> dists;
    double cost = 0.0;
};
DenseAssignment assign_dense(const BinaryRows& rows,
                             const std::vector<std::vector<double>>& centers);

// OLS by explicit normal equations and Gauss-Jordan inverse; p-values by
// numeric integration of the t density (no incomplete beta involved)
struct OlsRef {
    std::vector<double> beta;
    std::vector<double> se;
    std::vector<double> p;
};
OlsRef ols_normal_equations(const std::vector<std::vector<double>>& columns,
                            const std::vector<double>& y); // columns exclude the intercept
double t_tail_p_numeric(double t, double dof); // two-sided

} // namespace ref
} // namespace bcp
