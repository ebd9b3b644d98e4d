#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stack>
#include <stdexcept>

namespace bcp {
namespace ref {

namespace {

double edge_len(std::uint32_t w, EdgeLength mode) {
    return mode == EdgeLength::inverse ? 1.0 / w : 1.0;
}

} // namespace

std::vector<std::vector<double>> floyd_warshall(const BcGraph& graph, EdgeLength mode) {
    const std::uint32_t n = graph.node_count();
    std::vector<std::vector<double>> d(n,
                                       std::vector<double>(n, std::numeric_limits<double>::infinity()));
    for (std::uint32_t i = 0; i < n; ++i) {
        d[i][i] = 0.0;
        for (const auto& [j, w] : graph.neighbors(i))
            d[i][j] = edge_len(w, mode);
    }
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j])
                    d[i][j] = d[i][k] + d[k][j];
    return d;
}

std::vector<double> closeness_from_apsp(const std::vector<std::vector<double>>& dist) {
    std::vector<double> out(dist.size(), 0.0);
    for (size_t i = 0; i < dist.size(); ++i) {
        double sum = 0.0;
        for (size_t j = 0; j < dist.size(); ++j)
            if (i != j && std::isfinite(dist[i][j]))
                sum += dist[i][j];
        out[i] = sum > 0.0 ? 1.0 / sum : 0.0;
    }
    return out;
}

std::vector<double> betweenness_exhaustive(const BcGraph& graph, EdgeLength mode) {
    const std::uint32_t n = graph.node_count();
    if (n > 12)
        throw std::invalid_argument("betweenness_exhaustive: graph too large");
    std::vector<double> b(n, 0.0);

    // every simple path between s and t, as (length, interior-vertex mask)
    struct Path {
        double len;
        std::uint32_t interior;
    };
    std::vector<Path> paths;
    std::vector<std::uint32_t> stack_path;
    std::uint32_t visited = 0;

    auto dfs = [&](auto&& self, std::uint32_t u, std::uint32_t t, double len) -> void {
        if (u == t) {
            std::uint32_t interior = 0;
            for (size_t i = 1; i + 1 < stack_path.size(); ++i)
                interior |= 1u << stack_path[i];
            paths.push_back({len, interior});
            return;
        }
        for (const auto& [v, w] : graph.neighbors(u)) {
            if (visited & (1u << v))
                continue;
            visited |= 1u << v;
            stack_path.push_back(v);
            self(self, v, t, len + edge_len(w, mode));
            stack_path.pop_back();
            visited &= ~(1u << v);
        }
    };

    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t = 0; t < n; ++t) {
            if (s == t)
                continue;
            paths.clear();
            stack_path.assign(1, s);
            visited = 1u << s;
            dfs(dfs, s, t, 0.0);
            if (paths.empty())
                continue;
            double best = paths[0].len;
            for (const auto& p : paths)
                best = std::min(best, p.len);
            double sigma = 0.0;
            std::vector<double> sigma_v(n, 0.0);
            for (const auto& p : paths) {
                if (!path_length_equal(p.len, best))
                    continue;
                sigma += 1.0;
                for (std::uint32_t v = 0; v < n; ++v)
                    if (p.interior & (1u << v))
                        sigma_v[v] += 1.0;
            }
            for (std::uint32_t v = 0; v < n; ++v)
                if (sigma_v[v] > 0.0)
                    b[v] += sigma_v[v] / sigma;
        }
    for (auto& v : b)
        v /= 2.0;
    return b;
}

std::vector<double> betweenness_brandes_serial(const BcGraph& graph, EdgeLength mode) {
    const std::uint32_t n = graph.node_count();
    std::vector<double> b(n, 0.0);
    std::vector<double> dist(n), sigma(n), delta(n);
    std::vector<std::vector<std::uint32_t>> preds(n);
    std::vector<bool> done(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(done.begin(), done.end(), false);
        for (auto& p : preds)
            p.clear();
        std::vector<std::uint32_t> order;
        using Item = std::pair<double, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0.0;
        sigma[s] = 1.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (done[u])
                continue;
            done[u] = true;
            order.push_back(u);
            for (const auto& [v, w] : graph.neighbors(u)) {
                if (done[v])
                    continue;
                double nd = dist[u] + edge_len(w, mode);
                if (path_length_equal(nd, dist[v])) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                } else if (nd < dist[v]) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    preds[v].assign(1, u);
                    pq.push({nd, v});
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::uint32_t u = *it;
            for (auto p : preds[u])
                delta[p] += sigma[p] / sigma[u] * (1.0 + delta[u]);
            if (u != s)
                b[u] += delta[u];
        }
    }
    for (auto& v : b)
        v /= 2.0;
    return b;
}

} // namespace ref
} // namespace bcp
