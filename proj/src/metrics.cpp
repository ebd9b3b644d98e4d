#include "bcp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bcp {

std::uint64_t citation_horizon(const Corpus& corpus, std::string_view doi, int horizon_years) {
    const CorpusRecord* rec = corpus.find(doi);
    if (!rec)
        throw std::runtime_error("citation_horizon: unknown doi " + std::string(doi));
    if (horizon_years < 1)
        throw std::invalid_argument("citation_horizon: horizon must be >= 1");
    Date limit = add_years(rec->date, horizon_years);
    std::uint64_t count = 0;
    for (const auto& citer : corpus.citers_of(doi))
        if (citer.date && *citer.date <= limit)
            ++count;
    return count;
}

std::string truncate_pacs(const std::string& code, int depth) {
    if (depth <= 0)
        return code;
    size_t pos = 0;
    int seen = 0;
    while (pos < code.size()) {
        if (code[pos] == '.') {
            ++seen;
            if (seen == depth)
                return code.substr(0, pos);
        }
        ++pos;
    }
    return code;
}

PacsDiversity pacs_entropy(const Corpus& corpus, std::string_view doi, double coverage_threshold,
                           int pacs_depth) {
    const auto& refs = corpus.references_of(doi);
    PacsDiversity out;
    if (refs.empty())
        return out;
    std::map<std::string, std::uint64_t> freq;
    std::uint64_t covered = 0;
    std::uint64_t total_codes = 0;
    for (const auto& ref : refs) {
        const CorpusRecord* rec = corpus.find(ref);
        if (!rec || rec->pacs.empty())
            continue;
        ++covered;
        for (const auto& code : rec->pacs) {
            ++freq[truncate_pacs(code, pacs_depth)];
            ++total_codes;
        }
    }
    out.coverage = static_cast<double>(covered) / static_cast<double>(refs.size());
    if (out.coverage > coverage_threshold && total_codes > 0) {
        double h = 0.0;
        for (const auto& [code, c] : freq) {
            double p = static_cast<double>(c) / static_cast<double>(total_codes);
            h -= p * std::log2(p);
        }
        out.entropy = h;
    }
    return out;
}

MetricsTable assemble_metrics(const BcGraph& graph, const ClusterModel& model,
                              const Corpus& corpus, const MetricsOptions& options) {
    const std::uint32_t n = graph.node_count();
    if (model.dim != n || model.distances.size() != n)
        throw std::invalid_argument("assemble_metrics: model not fit on this graph");
    if (!model.nodes.empty() && model.nodes != graph.nodes())
        throw std::invalid_argument("assemble_metrics: model node list differs from graph");
    for (std::uint32_t i = 0; i < n; ++i)
        if (!corpus.find(graph.doi(i)))
            throw std::runtime_error("assemble_metrics: graph node missing from corpus: " +
                                     graph.doi(i));

    Centralities cent = compute_centralities(graph, options.edge_length);

    MetricsTable table;
    table.horizons = options.horizons;
    table.rows.resize(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        PaperMetrics& m = table.rows[i];
        m.doi = graph.doi(static_cast<std::uint32_t>(i));
        m.degree = graph.degree(static_cast<std::uint32_t>(i));
        m.betweenness = cent.betweenness[i];
        m.closeness = cent.closeness[i];
        m.distance = model.distances[i];
        auto div = pacs_entropy(corpus, m.doi, options.pacs_coverage_threshold, options.pacs_depth);
        m.pacs_entropy = div.entropy;
        m.pacs_coverage = div.coverage;
        m.ref_length = static_cast<std::uint32_t>(corpus.references_of(m.doi).size());
        m.citations.reserve(table.horizons.size());
        for (int h : table.horizons)
            m.citations.push_back(citation_horizon(corpus, m.doi, h));
    }
    return table;
}

void write_metrics_csv(const MetricsTable& table, const std::string& path) {
    std::string out = "doi,degree,betweenness,closeness,distance,pacs_entropy,pacs_coverage,"
                      "ref_length";
    for (int h : table.horizons)
        out += ",c" + std::to_string(h);
    if (!table.horizons.empty()) {
        out += ",rate" + std::to_string(table.horizons.front());
        out += ",rate" + std::to_string(table.horizons.back());
    }
    out += ",entropy_per_ref\n";
    for (const auto& m : table.rows) {
        out += csv_escape(m.doi);
        out += ',' + std::to_string(m.degree);
        out += ',' + fmt_double(m.betweenness);
        out += ',' + fmt_double(m.closeness);
        out += ',' + fmt_double(m.distance);
        out += ',';
        if (m.pacs_entropy)
            out += fmt_double(*m.pacs_entropy);
        out += ',' + fmt_double(m.pacs_coverage);
        out += ',' + std::to_string(m.ref_length);
        for (auto c : m.citations)
            out += ',' + std::to_string(c);
        if (!table.horizons.empty()) {
            out += ',' + fmt_double(static_cast<double>(m.citations.front()) /
                                    table.horizons.front());
            out += ',' + fmt_double(static_cast<double>(m.citations.back()) /
                                    table.horizons.back());
        }
        out += ',';
        if (m.pacs_entropy && m.ref_length > 0)
            out += fmt_double(*m.pacs_entropy / m.ref_length);
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace bcp
