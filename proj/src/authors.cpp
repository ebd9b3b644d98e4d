#include "bcp/authors.hpp"

#include "bcp/centrality.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace bcp {

namespace {

struct NodeMetrics {
    double distance;
    double degree;
    double betweenness;
    double closeness;
    double ref_length;
};

} // namespace

std::vector<AuthorRecord> build_author_table(const Corpus& corpus, int window_lo, int window_hi,
                                             const std::map<int, YearNetwork>& per_year,
                                             int short_horizon_year, int long_horizon_year) {
    if (window_lo > window_hi)
        throw std::invalid_argument("build_author_table: empty window");
    for (int y = window_lo; y <= window_hi; ++y) {
        auto it = per_year.find(y);
        if (it == per_year.end() || !it->second.graph || !it->second.model)
            throw std::runtime_error("build_author_table: missing graph/model for year " +
                                     std::to_string(y));
    }

    // per-year metrics of largest-component papers
    std::map<int, std::unordered_map<std::string, NodeMetrics>> year_metrics;
    for (int y = window_lo; y <= window_hi; ++y) {
        const auto& net = per_year.at(y);
        const BcGraph& g = *net.graph;
        const ClusterModel& m = *net.model;
        if (m.dim != g.node_count())
            throw std::invalid_argument("build_author_table: model/graph mismatch for year " +
                                        std::to_string(y));
        Centralities cent = compute_centralities(g);
        auto& dst = year_metrics[y];
        dst.reserve(g.node_count());
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            dst.emplace(g.doi(i),
                        NodeMetrics{m.distances[i], static_cast<double>(g.degree(i)),
                                    cent.betweenness[i], cent.closeness[i],
                                    static_cast<double>(corpus.references_of(g.doi(i)).size())});
    }

    // window papers per author; std::map keeps the output ordering stable.
    // A name listed twice on one paper still counts the paper once.
    std::map<std::string, std::vector<std::uint32_t>> by_author;
    const auto& records = corpus.records();
    for (std::uint32_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.type != ArticleType::research || r.date.year < window_lo ||
            r.date.year > window_hi)
            continue;
        std::set<std::string> keys;
        for (const auto& a : r.authors) {
            std::string key = normalize_name(a);
            if (!key.empty())
                keys.insert(std::move(key));
        }
        for (const auto& key : keys)
            by_author[key].push_back(i);
    }

    Date short_limit{short_horizon_year, 12, 31};
    Date long_limit{long_horizon_year, 12, 31};

    std::vector<AuthorRecord> table;
    table.reserve(by_author.size());
    for (auto& [key, idxs] : by_author) {
        AuthorRecord rec;
        rec.author_key = key;
        rec.n_papers = idxs.size();

        std::map<int, std::vector<const NodeMetrics*>> per_year_papers;
        for (std::uint32_t i : idxs) {
            const auto& r = records[i];
            rec.papers.emplace_back(r.doi, r.date.year);
            for (const auto& citer : corpus.citers_of(r.doi)) {
                if (!citer.date)
                    continue;
                if (*citer.date <= short_limit)
                    ++rec.citations_short;
                if (*citer.date <= long_limit)
                    ++rec.citations_long;
            }
            auto ym = year_metrics.find(r.date.year);
            if (ym != year_metrics.end()) {
                auto nm = ym->second.find(r.doi);
                if (nm != ym->second.end())
                    per_year_papers[r.date.year].push_back(&nm->second);
            }
        }

        if (per_year_papers.empty()) {
            double nan = std::numeric_limits<double>::quiet_NaN();
            rec.avg_distance = rec.avg_degree = rec.avg_betweenness = nan;
            rec.avg_closeness = rec.avg_ref_length = nan;
        } else {
            // per-year means first, then the mean over years
            double d = 0, deg = 0, bet = 0, clo = 0, ref = 0;
            for (const auto& [y, papers] : per_year_papers) {
                double yd = 0, ydeg = 0, ybet = 0, yclo = 0, yref = 0;
                for (const auto* nm : papers) {
                    yd += nm->distance;
                    ydeg += nm->degree;
                    ybet += nm->betweenness;
                    yclo += nm->closeness;
                    yref += nm->ref_length;
                }
                double inv = 1.0 / static_cast<double>(papers.size());
                d += yd * inv;
                deg += ydeg * inv;
                bet += ybet * inv;
                clo += yclo * inv;
                ref += yref * inv;
            }
            double inv = 1.0 / static_cast<double>(per_year_papers.size());
            rec.avg_distance = d * inv;
            rec.avg_degree = deg * inv;
            rec.avg_betweenness = bet * inv;
            rec.avg_closeness = clo * inv;
            rec.avg_ref_length = ref * inv;
        }
        table.push_back(std::move(rec));
    }
    return table;
}

void write_author_csv(const std::vector<AuthorRecord>& table, const std::string& path) {
    std::string out = "author,n_papers,avg_distance,avg_degree,avg_betweenness,avg_closeness,"
                      "avg_ref_length,citations_short,citations_long\n";
    auto cell = [](double v) { return std::isnan(v) ? std::string() : fmt_double(v); };
    for (const auto& r : table) {
        out += csv_escape(r.author_key);
        out += ',' + std::to_string(r.n_papers);
        out += ',' + cell(r.avg_distance);
        out += ',' + cell(r.avg_degree);
        out += ',' + cell(r.avg_betweenness);
        out += ',' + cell(r.avg_closeness);
        out += ',' + cell(r.avg_ref_length);
        out += ',' + std::to_string(r.citations_short);
        out += ',' + std::to_string(r.citations_long);
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace bcp
