#pragma once

#include "bcp/bcgraph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bcp {

// Binarized BC-adjacency rows, kept sparse. dim equals the node count; the
// support of row i lists the j with M_ij > 0.
struct BinaryRows {
    std::uint32_t dim = 0;
    std::vector<std::vector<std::uint32_t>> support;

    std::uint32_t count() const { return static_cast<std::uint32_t>(support.size()); }
};

BinaryRows binarize_rows(const BcGraph& graph);

struct ClusterModel {
    int k = 0;
    std::uint32_t dim = 0;
    std::vector<std::string> nodes;            // row order; may be empty for raw fits
    std::vector<std::vector<double>> centers;  // k rows of dim fractional coords
    std::vector<int> assignment;               // per row, in [0, k)
    std::vector<double> distances;             // D_i = min over centers
    double total_cost = 0.0;                   // sum of distances
    std::vector<double> cost_trace;            // accepted costs of the winning run
    std::uint64_t seed = 0;
    int restarts = 1;
    int max_iter = 300;
    double tol = 1e-9;

    int label_of(std::string_view doi) const;
    double distance_of(std::string_view doi) const;
};

// Normalized Hamming/L1 distance between a binary row and a fractional
// center: (1/dim) sum_j |x_j - c_j|. center_sum is sum_j c_j.
double hamming_distance(std::span<const std::uint32_t> support, std::span<const double> center,
                        double center_sum, std::uint32_t dim);

// Lloyd alternation with k-means++ style seeding under the same distance;
// centers are updated to coordinate-wise medians (majority votes, 0.5 on
// exact splits), the L1 minimizer, so the cost trace is non-increasing.
// Best of `restarts` independent runs wins (ties to the lower restart index).
ClusterModel fit_kmeans(const BinaryRows& rows, int k, std::uint64_t seed, int restarts = 10,
                        int max_iter = 300, double tol = 1e-9);

// binarize + fit + attach node dois
ClusterModel fit_kmeans(const BcGraph& graph, int k, std::uint64_t seed, int restarts = 10,
                        int max_iter = 300, double tol = 1e-9);

double distance_to_nearest(const ClusterModel& model, std::span<const std::uint32_t> support,
                           std::uint32_t dim);

void save_cluster_model(const ClusterModel& model, const std::string& path);
ClusterModel load_cluster_model(const std::string& path);

} // namespace bcp
