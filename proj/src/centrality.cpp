#include "bcp/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace bcp {

bool path_length_equal(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        return a == b;
    return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

namespace {

struct SourcePass {
    std::vector<double> dist;
    std::vector<double> delta; // pair dependencies of this source
    double dist_sum = 0.0;
};

SourcePass single_source(const BcGraph& g, std::uint32_t s, EdgeLength mode) {
    const std::uint32_t n = g.node_count();
    SourcePass r;
    r.dist.assign(n, std::numeric_limits<double>::infinity());
    std::vector<double> sigma(n, 0.0);
    std::vector<std::vector<std::uint32_t>> preds(n);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::vector<bool> settled(n, false);

    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    r.dist[s] = 0.0;
    sigma[s] = 1.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (settled[u])
            continue;
        settled[u] = true;
        order.push_back(u);
        for (const auto& [v, w] : g.neighbors(u)) {
            if (settled[v])
                continue;
            double len = mode == EdgeLength::inverse ? 1.0 / w : 1.0;
            double nd = r.dist[u] + len;
            if (path_length_equal(nd, r.dist[v])) {
                sigma[v] += sigma[u];
                preds[v].push_back(u);
            } else if (nd < r.dist[v]) {
                r.dist[v] = nd;
                sigma[v] = sigma[u];
                preds[v].assign(1, u);
                pq.push({nd, v});
            }
        }
    }

    r.delta.assign(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint32_t u = *it;
        for (std::uint32_t p : preds[u])
            r.delta[p] += sigma[p] / sigma[u] * (1.0 + r.delta[u]);
        if (u != s)
            r.dist_sum += r.dist[u];
    }
    return r;
}

} // namespace

Centralities compute_centralities(const BcGraph& graph, EdgeLength mode) {
    const std::uint32_t n = graph.node_count();
    Centralities out;
    out.betweenness.assign(n, 0.0);
    out.closeness.assign(n, 0.0);

    // chunked so the betweenness accumulation happens in source order,
    // keeping the floating-point sum identical for any thread count
    constexpr std::uint32_t kChunk = 64;
    std::vector<SourcePass> buf(std::min(kChunk, n));
    for (std::uint32_t base = 0; base < n; base += kChunk) {
        std::uint32_t hi = std::min(base + kChunk, n);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t s = base; s < static_cast<std::int64_t>(hi); ++s)
            buf[s - base] = single_source(graph, static_cast<std::uint32_t>(s), mode);
        for (std::uint32_t s = base; s < hi; ++s) {
            const auto& pass = buf[s - base];
            for (std::uint32_t v = 0; v < n; ++v)
                if (v != s)
                    out.betweenness[v] += pass.delta[v];
            out.closeness[s] = pass.dist_sum > 0.0 ? 1.0 / pass.dist_sum : 0.0;
        }
    }
    for (std::uint32_t v = 0; v < n; ++v)
        out.betweenness[v] /= 2.0;
    return out;
}

std::vector<double> weighted_betweenness(const BcGraph& graph, EdgeLength mode) {
    return compute_centralities(graph, mode).betweenness;
}

std::vector<double> weighted_closeness(const BcGraph& graph, EdgeLength mode) {
    return compute_centralities(graph, mode).closeness;
}

} // namespace bcp
