#pragma once

#include "bcp/bcgraph.hpp"
#include "bcp/cluster.hpp"
#include "bcp/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bcp {
namespace report {

enum class FigureKind { distribution, quantile_scatter, paired_histogram, network_layout };

struct SeriesSpec {
    std::string label;
    std::string csv;    // empty -> the CLI's --metrics file
    std::string column;
};

struct FigureSpec {
    FigureKind kind = FigureKind::distribution;
    std::string name;

    // distribution
    std::vector<SeriesSpec> series;
    int bins = 0; // 0 = Freedman-Diaconis

    // quantile_scatter / paired_histogram
    std::string csv;
    std::string covariate;
    std::string response;
    std::size_t bin_size = 400;
    std::vector<double> quantiles = {0.5, 0.7, 0.9};
    bool log_x = false;
    bool log_y = false;

    // network_layout
    std::string graph_stem; // bcnet output stem
    std::string model_path;
    std::string metrics_csv; // source of size_column, empty -> default
    std::string size_column;
    std::uint32_t min_weight = 1;
    std::uint64_t layout_seed = 7;
};

std::vector<FigureSpec> load_figure_specs(const std::string& path);

// Renders <out_dir>/<name>.svg plus a sibling <name>.csv holding exactly
// the plotted numbers. base_dir resolves relative inputs;
// default_metrics_csv backs entries without an explicit csv.
void render_figure(const FigureSpec& spec, const std::string& base_dir,
                   const std::string& default_metrics_csv, const std::string& out_dir);

// deterministic Fruchterman-Reingold; positions in the unit square
struct LayoutPoint {
    double x;
    double y;
};
std::vector<LayoutPoint> force_layout(std::uint32_t n,
                                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                      std::uint64_t seed, int iterations = 200);

// direct entry points used by the CLI and tests
void render_distribution(const std::vector<std::pair<std::string, std::vector<double>>>& series,
                         int bins, const std::string& out_stem);
void render_quantile_scatter(const std::vector<double>& covariate,
                             const std::vector<double>& response, std::size_t bin_size,
                             const std::vector<double>& quantiles, bool log_x, bool log_y,
                             const std::string& covariate_name, const std::string& response_name,
                             const std::string& out_stem);
void render_paired_histogram(const std::vector<double>& covariate,
                             const std::vector<double>& response, std::size_t bin_size, int bins,
                             const std::string& covariate_name, const std::string& response_name,
                             const std::string& out_stem);
void render_network(const BcGraph& graph, const ClusterModel& model,
                    const std::vector<double>& size_by_node, const std::string& size_name,
                    std::uint32_t min_weight, std::uint64_t seed, const std::string& out_stem);

// Freedman-Diaconis bin count (>= 1); used when bins == 0
int fd_bin_count(std::span<const double> values);

} // namespace report
} // namespace bcp
