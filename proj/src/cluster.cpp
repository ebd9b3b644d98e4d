#include "bcp/cluster.hpp"

#include "bcp/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcp {

using nlohmann::json;
using nlohmann::ordered_json;

BinaryRows binarize_rows(const BcGraph& graph) {
    if (graph.node_count() == 0)
        throw std::invalid_argument("binarize_rows: empty graph");
    BinaryRows rows;
    rows.dim = graph.node_count();
    rows.support.resize(rows.dim);
    for (std::uint32_t i = 0; i < rows.dim; ++i) {
        auto nb = graph.neighbors(i);
        rows.support[i].reserve(nb.size());
        for (const auto& [j, w] : nb) {
            (void)w;
            rows.support[i].push_back(j);
        }
    }
    return rows;
}

int ClusterModel::label_of(std::string_view doi) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), doi);
    if (it == nodes.end() || *it != doi)
        throw std::runtime_error("unknown node in cluster model: " + std::string(doi));
    return assignment[static_cast<size_t>(it - nodes.begin())];
}

double ClusterModel::distance_of(std::string_view doi) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), doi);
    if (it == nodes.end() || *it != doi)
        throw std::runtime_error("unknown node in cluster model: " + std::string(doi));
    return distances[static_cast<size_t>(it - nodes.begin())];
}

double hamming_distance(std::span<const std::uint32_t> support, std::span<const double> center,
                        double center_sum, std::uint32_t dim) {
    // sum_j |x_j - c_j| = S_c + sum_{j in supp(x)} (1 - 2 c_j), exact for binary x
    double acc = center_sum;
    for (std::uint32_t j : support)
        acc += 1.0 - 2.0 * center[j];
    return acc / dim;
}

namespace {

struct Assignment {
    std::vector<int> labels;
    std::vector<double> dists;
    double cost = 0.0;
};

Assignment assign_all(const BinaryRows& rows, const std::vector<std::vector<double>>& centers,
                      const std::vector<double>& center_sums) {
    const auto n = rows.count();
    const int k = static_cast<int>(centers.size());
    Assignment a;
    a.labels.assign(n, 0);
    a.dists.assign(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (int c = 0; c < k; ++c) {
            double d = hamming_distance(rows.support[i], centers[c], center_sums[c], rows.dim);
            if (d < best) {
                best = d;
                best_c = c;
            }
        }
        a.labels[i] = best_c;
        a.dists[i] = best;
    }
    // serial sum in row order keeps the cost independent of the thread count
    for (std::uint32_t i = 0; i < n; ++i)
        a.cost += a.dists[i];
    return a;
}

std::vector<double> sums_of(const std::vector<std::vector<double>>& centers) {
    std::vector<double> s(centers.size(), 0.0);
    for (size_t c = 0; c < centers.size(); ++c)
        for (double v : centers[c])
            s[c] += v;
    return s;
}

// Coordinate-wise medians: majority vote per coordinate, 0.5 on an exact
// split. The median minimizes the summed L1 distance, which keeps the Lloyd
// cost non-increasing; a mean update does not under this metric (it loses
// to any majority-respecting row, so runs stall at their seeds). Empty
// clusters are reseeded at the row farthest from its current center.
std::vector<std::vector<double>> update_centers(const BinaryRows& rows, const Assignment& a,
                                                int k) {
    const auto n = rows.count();
    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::uint32_t i = 0; i < n; ++i)
        members[a.labels[i]].push_back(i);

    std::vector<std::vector<double>> centers(k, std::vector<double>(rows.dim, 0.0));
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < k; ++c) {
        if (members[c].empty())
            continue;
        auto& ctr = centers[c];
        for (std::uint32_t i : members[c])
            for (std::uint32_t j : rows.support[i])
                ctr[j] += 1.0;
        double half = static_cast<double>(members[c].size()) / 2.0;
        for (double& v : ctr)
            v = v > half ? 1.0 : (v == half ? 0.5 : 0.0);
    }

    std::vector<bool> used(n, false);
    for (int c = 0; c < k; ++c) {
        if (!members[c].empty())
            continue;
        std::uint32_t pick = 0;
        double far = -1.0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (!used[i] && a.dists[i] > far) {
                far = a.dists[i];
                pick = i;
            }
        used[pick] = true;
        auto& ctr = centers[c];
        std::fill(ctr.begin(), ctr.end(), 0.0);
        for (std::uint32_t j : rows.support[pick])
            ctr[j] = 1.0;
    }
    return centers;
}

std::vector<std::vector<double>> kmeanspp_init(const BinaryRows& rows, int k, Rng& rng) {
    const auto n = rows.count();
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    auto as_center = [&](std::uint32_t i) {
        std::vector<double> c(rows.dim, 0.0);
        for (std::uint32_t j : rows.support[i])
            c[j] = 1.0;
        return c;
    };
    std::uint32_t first = static_cast<std::uint32_t>(rng.next_index(n));
    centers.push_back(as_center(first));

    std::vector<double> dist(n, 0.0);
    double first_sum = static_cast<double>(rows.support[first].size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        dist[i] = hamming_distance(rows.support[i], centers[0], first_sum, rows.dim);

    for (int t = 1; t < k; ++t) {
        double total = 0.0;
        for (std::uint32_t i = 0; i < n; ++i)
            total += dist[i] * dist[i];
        std::uint32_t pick;
        if (total <= 0.0) {
            pick = static_cast<std::uint32_t>(rng.next_index(n));
        } else {
            double r = rng.next_real() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::uint32_t i = 0; i < n; ++i) {
                acc += dist[i] * dist[i];
                if (acc >= r) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(as_center(pick));
        const auto& ctr = centers.back();
        double csum = static_cast<double>(rows.support[pick].size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            double d = hamming_distance(rows.support[i], ctr, csum, rows.dim);
            if (d < dist[i])
                dist[i] = d;
        }
    }
    return centers;
}

struct RunResult {
    std::vector<std::vector<double>> centers;
    Assignment assign;
    std::vector<double> trace;
};

RunResult lloyd_run(const BinaryRows& rows, int k, std::uint64_t run_seed, int max_iter,
                    double tol) {
    Rng rng(run_seed);
    RunResult r;
    r.centers = kmeanspp_init(rows, k, rng);
    r.assign = assign_all(rows, r.centers, sums_of(r.centers));
    r.trace.push_back(r.assign.cost);

    for (int iter = 0; iter < max_iter; ++iter) {
        auto centers = update_centers(rows, r.assign, k);
        auto assign = assign_all(rows, centers, sums_of(centers));
        // median updates cannot raise the cost, but only improving iterates
        // are kept anyway, so the recorded trace is non-increasing by
        // construction even with empty-cluster reseeding in play
        if (assign.cost < r.assign.cost) {
            bool converged = r.assign.cost - assign.cost <= tol * std::abs(r.assign.cost);
            r.centers = std::move(centers);
            r.assign = std::move(assign);
            r.trace.push_back(r.assign.cost);
            if (converged)
                break;
        } else {
            break;
        }
    }
    return r;
}

} // namespace

ClusterModel fit_kmeans(const BinaryRows& rows, int k, std::uint64_t seed, int restarts,
                        int max_iter, double tol) {
    if (k < 1)
        throw std::invalid_argument("fit_kmeans: k must be >= 1");
    if (static_cast<std::uint32_t>(k) > rows.count())
        throw std::invalid_argument("fit_kmeans: k exceeds number of rows");
    if (restarts < 1)
        throw std::invalid_argument("fit_kmeans: restarts must be >= 1");

    RunResult best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        std::uint64_t run_seed = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1);
        RunResult run = lloyd_run(rows, k, run_seed, max_iter, tol);
        if (!have || run.assign.cost < best.assign.cost) {
            best = std::move(run);
            have = true;
        }
    }

    ClusterModel m;
    m.k = k;
    m.dim = rows.dim;
    m.centers = std::move(best.centers);
    m.assignment = std::move(best.assign.labels);
    m.distances = std::move(best.assign.dists);
    m.total_cost = best.assign.cost;
    m.cost_trace = std::move(best.trace);
    m.seed = seed;
    m.restarts = restarts;
    m.max_iter = max_iter;
    m.tol = tol;
    return m;
}

ClusterModel fit_kmeans(const BcGraph& graph, int k, std::uint64_t seed, int restarts,
                        int max_iter, double tol) {
    ClusterModel m = fit_kmeans(binarize_rows(graph), k, seed, restarts, max_iter, tol);
    m.nodes = graph.nodes();
    return m;
}

double distance_to_nearest(const ClusterModel& model, std::span<const std::uint32_t> support,
                           std::uint32_t dim) {
    if (dim != model.dim)
        throw std::invalid_argument("distance_to_nearest: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : model.centers) {
        double s = 0.0;
        for (double v : c)
            s += v;
        best = std::min(best, hamming_distance(support, c, s, dim));
    }
    return best;
}

void save_cluster_model(const ClusterModel& model, const std::string& path) {
    ordered_json j;
    j["format"] = "bcp-model";
    j["version"] = 1;
    j["k"] = model.k;
    j["dim"] = model.dim;
    j["seed"] = model.seed;
    j["restarts"] = model.restarts;
    j["max_iter"] = model.max_iter;
    j["tol"] = model.tol;
    j["nodes"] = model.nodes;
    ordered_json centers = ordered_json::array();
    for (const auto& c : model.centers) {
        ordered_json idx = ordered_json::array();
        ordered_json val = ordered_json::array();
        for (std::uint32_t i = 0; i < c.size(); ++i)
            if (c[i] != 0.0) {
                idx.push_back(i);
                val.push_back(c[i]);
            }
        ordered_json entry;
        entry["idx"] = idx;
        entry["val"] = val;
        centers.push_back(entry);
    }
    j["centers"] = centers;
    j["assignment"] = model.assignment;
    j["distances"] = model.distances;
    j["total_cost"] = model.total_cost;
    j["cost_trace"] = model.cost_trace;
    write_file_atomic(path, j.dump() + "\n");
}

ClusterModel load_cluster_model(const std::string& path) {
    json j = json::parse(read_file(path));
    if (!j.contains("format") || j["format"] != "bcp-model")
        throw std::runtime_error("not a cluster model file: " + path);
    ClusterModel m;
    m.k = j["k"].get<int>();
    m.dim = j["dim"].get<std::uint32_t>();
    m.seed = j["seed"].get<std::uint64_t>();
    m.restarts = j["restarts"].get<int>();
    m.max_iter = j["max_iter"].get<int>();
    m.tol = j["tol"].get<double>();
    m.nodes = j["nodes"].get<std::vector<std::string>>();
    for (const auto& entry : j["centers"]) {
        std::vector<double> c(m.dim, 0.0);
        const auto& idx = entry["idx"];
        const auto& val = entry["val"];
        for (size_t i = 0; i < idx.size(); ++i)
            c[idx[i].get<std::uint32_t>()] = val[i].get<double>();
        m.centers.push_back(std::move(c));
    }
    m.assignment = j["assignment"].get<std::vector<int>>();
    m.distances = j["distances"].get<std::vector<double>>();
    m.total_cost = j["total_cost"].get<double>();
    m.cost_trace = j["cost_trace"].get<std::vector<double>>();
    return m;
}

} // namespace bcp
