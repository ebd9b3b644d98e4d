#pragma once

#include "bcp/bcgraph.hpp"

#include <vector>

namespace bcp {

// Shortest-path edge length derived from the coupling weight. `inverse`
// (1/M_ij) makes strong coupling short; `unit` ignores weights and exists
// for sensitivity checks.
enum class EdgeLength { inverse, unit };

// Two weighted path lengths count as equal when they differ by <= 1e-12
// relative; shortest-path multiplicity counting depends on it.
bool path_length_equal(double a, double b);

struct Centralities {
    std::vector<double> betweenness; // per node; ordered-pair sum / 2, endpoints excluded
    std::vector<double> closeness;   // per node; 1 / sum of distances to all others
};

// Brandes accumulation over weighted shortest paths, parallel over source
// chunks with a fixed-order reduction (results do not depend on the thread
// count). Single sweep also yields closeness.
Centralities compute_centralities(const BcGraph& graph, EdgeLength mode = EdgeLength::inverse);

std::vector<double> weighted_betweenness(const BcGraph& graph,
                                         EdgeLength mode = EdgeLength::inverse);
std::vector<double> weighted_closeness(const BcGraph& graph,
                                       EdgeLength mode = EdgeLength::inverse);

} // namespace bcp
