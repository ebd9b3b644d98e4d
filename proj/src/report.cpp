#include "bcp/report.hpp"

#include "bcp/rng.hpp"
#include "bcp/table.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <stdexcept>

namespace bcp {
namespace report {

using nlohmann::json;

namespace {

const char* kPalette[] = {"#4363d8", "#e6194b", "#3cb44b", "#f58231", "#911eb4",
                          "#46f0f0", "#f032e6", "#bcf60c", "#008080", "#9a6324"};
constexpr int kPaletteSize = 10;

constexpr double kWidth = 800, kHeight = 600;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 30, kMarginB = 50;

struct Axis {
    double lo = 0, hi = 1;
    double scale(double v, double pix_lo, double pix_hi) const {
        double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

std::string svg_header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
}

std::string svg_text(double x, double y, const std::string& s, int size = 12,
                     const std::string& anchor = "start") {
    return "<text x=\"" + fmt_double(x) + "\" y=\"" + fmt_double(y) + "\" font-size=\"" +
           std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
           "\">" + s + "</text>\n";
}

// round axis bounds outward to two significant digits
Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        hi = lo + 1;
        lo -= 1;
    }
    double span = hi - lo;
    double mag = std::pow(10.0, std::floor(std::log10(span)) - 1);
    Axis a;
    a.lo = std::floor(lo / mag) * mag;
    a.hi = std::ceil(hi / mag) * mag;
    return a;
}

std::string svg_axes(const Axis& xa, const Axis& ya, const std::string& xlabel,
                     const std::string& ylabel) {
    std::string s;
    s += "<line x1=\"" + fmt_double(kMarginL) + "\" y1=\"" + fmt_double(kHeight - kMarginB) +
         "\" x2=\"" + fmt_double(kWidth - kMarginR) + "\" y2=\"" +
         fmt_double(kHeight - kMarginB) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt_double(kMarginL) + "\" y1=\"" + fmt_double(kMarginT) + "\" x2=\"" +
         fmt_double(kMarginL) + "\" y2=\"" + fmt_double(kHeight - kMarginB) +
         "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double t = i / 5.0;
        double xv = xa.lo + t * (xa.hi - xa.lo);
        double xp = kMarginL + t * (kWidth - kMarginL - kMarginR);
        s += "<line x1=\"" + fmt_double(xp) + "\" y1=\"" + fmt_double(kHeight - kMarginB) +
             "\" x2=\"" + fmt_double(xp) + "\" y2=\"" + fmt_double(kHeight - kMarginB + 5) +
             "\" stroke=\"black\"/>\n";
        s += svg_text(xp, kHeight - kMarginB + 20, fmt_double(xv), 11, "middle");
        double yv = ya.lo + t * (ya.hi - ya.lo);
        double yp = kHeight - kMarginB - t * (kHeight - kMarginT - kMarginB);
        s += "<line x1=\"" + fmt_double(kMarginL - 5) + "\" y1=\"" + fmt_double(yp) + "\" x2=\"" +
             fmt_double(kMarginL) + "\" y2=\"" + fmt_double(yp) + "\" stroke=\"black\"/>\n";
        s += svg_text(kMarginL - 8, yp + 4, fmt_double(yv), 11, "end");
    }
    s += svg_text(kWidth / 2, kHeight - 10, xlabel, 13, "middle");
    s += "<g transform=\"translate(15," + fmt_double(kHeight / 2) + ") rotate(-90)\">" +
         svg_text(0, 0, ylabel, 13, "middle") + "</g>\n";
    return s;
}

double px(const Axis& a, double v) {
    return a.scale(v, kMarginL, kWidth - kMarginR);
}
double py(const Axis& a, double v) {
    return a.scale(v, kHeight - kMarginB, kMarginT);
}

std::vector<double> drop_nan(std::span<const double> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v)
        if (!std::isnan(x))
            out.push_back(x);
    return out;
}

struct Histogram {
    std::vector<double> edges;   // bins+1
    std::vector<double> density; // normalized: sum(density*width) = 1
    std::vector<std::uint64_t> count;
};

Histogram histogram(std::span<const double> values, double lo, double hi, int bins) {
    Histogram h;
    if (bins < 1)
        bins = 1;
    if (!(hi > lo))
        hi = lo + 1;
    double w = (hi - lo) / bins;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[b] = lo + b * w;
    h.count.assign(bins, 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / w);
        b = std::clamp(b, 0, bins - 1);
        ++h.count[b];
    }
    h.density.resize(bins);
    double n = static_cast<double>(values.size());
    for (int b = 0; b < bins; ++b)
        h.density[b] = n > 0 ? h.count[b] / (n * w) : 0.0;
    return h;
}

} // namespace

int fd_bin_count(std::span<const double> values) {
    auto v = drop_nan(values);
    if (v.size() < 2)
        return 1;
    double q1 = stats::quantile(v, 0.25);
    double q3 = stats::quantile(v, 0.75);
    double iqr = q3 - q1;
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double span = *mx - *mn;
    if (iqr <= 0.0 || span <= 0.0)
        return 1;
    double width = 2.0 * iqr / std::cbrt(static_cast<double>(v.size()));
    return std::max(1, static_cast<int>(std::ceil(span / width)));
}

void render_distribution(const std::vector<std::pair<std::string, std::vector<double>>>& series,
                         int bins, const std::string& out_stem) {
    if (series.empty())
        throw std::invalid_argument("render_distribution: no series");
    std::vector<double> pooled;
    for (const auto& [label, vals] : series) {
        auto v = drop_nan(vals);
        if (v.empty())
            throw std::invalid_argument("render_distribution: empty series " + label);
        pooled.insert(pooled.end(), v.begin(), v.end());
    }
    auto [mn, mx] = std::minmax_element(pooled.begin(), pooled.end());
    int nb = bins > 0 ? bins : fd_bin_count(pooled);

    std::string csv = "series,bin_lo,bin_hi,count,density\n";
    std::vector<Histogram> hists;
    double dmax = 0;
    for (const auto& [label, vals] : series) {
        auto h = histogram(drop_nan(vals), *mn, *mx, nb);
        for (int b = 0; b < nb; ++b) {
            csv += csv_escape(label) + ',' + fmt_double(h.edges[b]) + ',' +
                   fmt_double(h.edges[b + 1]) + ',' + std::to_string(h.count[b]) + ',' +
                   fmt_double(h.density[b]) + '\n';
            dmax = std::max(dmax, h.density[b]);
        }
        hists.push_back(std::move(h));
    }
    write_file_atomic(out_stem + ".csv", csv);

    Axis xa = nice_axis(*mn, *mx);
    Axis ya = nice_axis(0, dmax);
    std::string svg = svg_header();
    svg += svg_axes(xa, ya, "value", "density");
    for (size_t s = 0; s < series.size(); ++s) {
        const auto& h = hists[s];
        std::string pts;
        for (size_t b = 0; b < h.density.size(); ++b) {
            pts += fmt_double(px(xa, h.edges[b])) + ',' + fmt_double(py(ya, h.density[b])) + ' ';
            pts += fmt_double(px(xa, h.edges[b + 1])) + ',' + fmt_double(py(ya, h.density[b])) + ' ';
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               kPalette[s % kPaletteSize] + "\" stroke-width=\"1.5\"/>\n";
        svg += "<rect x=\"" + fmt_double(kWidth - 180) + "\" y=\"" +
               fmt_double(kMarginT + 18.0 * s) + "\" width=\"12\" height=\"12\" fill=\"" +
               kPalette[s % kPaletteSize] + "\"/>\n";
        svg += svg_text(kWidth - 162, kMarginT + 18.0 * s + 10, series[s].first);
    }
    svg += "</svg>\n";
    write_file_atomic(out_stem + ".svg", svg);
}

void render_quantile_scatter(const std::vector<double>& covariate,
                             const std::vector<double>& response, std::size_t bin_size,
                             const std::vector<double>& quantiles, bool log_x, bool log_y,
                             const std::string& covariate_name, const std::string& response_name,
                             const std::string& out_stem) {
    auto table = stats::quantile_bins(covariate, response, bin_size, quantiles, covariate_name,
                                      response_name);
    auto tx = [&](double v) { return log_x ? std::log10(v + 1.0) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v + 1.0) : v; };

    std::string csv = "type,quantile,x,y\n";
    for (size_t i = 0; i < covariate.size(); ++i) {
        if (std::isnan(covariate[i]) || std::isnan(response[i]))
            continue;
        csv += "point,," + fmt_double(covariate[i]) + ',' + fmt_double(response[i]) + '\n';
    }
    for (size_t q = 0; q < table.quantiles.size(); ++q)
        for (const auto& bin : table.bins) {
            double mid = (bin.covariate_lo + bin.covariate_hi) / 2.0;
            csv += "curve," + fmt_double(table.quantiles[q]) + ',' + fmt_double(mid) + ',' +
                   fmt_double(bin.q[q]) + '\n';
        }
    write_file_atomic(out_stem + ".csv", csv);

    double xmn = 0, xmx = 0, ymn = 0, ymx = 0;
    bool first = true;
    for (size_t i = 0; i < covariate.size(); ++i) {
        if (std::isnan(covariate[i]) || std::isnan(response[i]))
            continue;
        double x = tx(covariate[i]), y = ty(response[i]);
        if (first) {
            xmn = xmx = x;
            ymn = ymx = y;
            first = false;
        }
        xmn = std::min(xmn, x);
        xmx = std::max(xmx, x);
        ymn = std::min(ymn, y);
        ymx = std::max(ymx, y);
    }
    Axis xa = nice_axis(xmn, xmx);
    Axis ya = nice_axis(ymn, ymx);
    std::string svg = svg_header();
    svg += svg_axes(xa, ya, covariate_name + (log_x ? " (log10(x+1))" : ""),
                    response_name + (log_y ? " (log10(x+1))" : ""));
    for (size_t i = 0; i < covariate.size(); ++i) {
        if (std::isnan(covariate[i]) || std::isnan(response[i]))
            continue;
        svg += "<circle cx=\"" + fmt_double(px(xa, tx(covariate[i]))) + "\" cy=\"" +
               fmt_double(py(ya, ty(response[i]))) + "\" r=\"1.5\" fill=\"#bbbbbb\"/>\n";
    }
    for (size_t q = 0; q < table.quantiles.size(); ++q) {
        std::string pts;
        for (const auto& bin : table.bins) {
            double mid = (bin.covariate_lo + bin.covariate_hi) / 2.0;
            pts += fmt_double(px(xa, tx(mid))) + ',' + fmt_double(py(ya, ty(bin.q[q]))) + ' ';
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               kPalette[q % kPaletteSize] + "\" stroke-width=\"2\"/>\n";
        svg += svg_text(kWidth - 170, kMarginT + 16.0 * q + 10,
                        "q" + fmt_double(table.quantiles[q] * 100.0), 12);
        svg += "<rect x=\"" + fmt_double(kWidth - 185) + "\" y=\"" +
               fmt_double(kMarginT + 16.0 * q) + "\" width=\"10\" height=\"10\" fill=\"" +
               kPalette[q % kPaletteSize] + "\"/>\n";
    }
    svg += "</svg>\n";
    write_file_atomic(out_stem + ".svg", svg);
}

void render_paired_histogram(const std::vector<double>& covariate,
                             const std::vector<double>& response, std::size_t bin_size, int bins,
                             const std::string& covariate_name, const std::string& response_name,
                             const std::string& out_stem) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < covariate.size(); ++i)
        if (!std::isnan(covariate[i]) && !std::isnan(response[i]))
            idx.push_back(i);
    if (bin_size == 0 || idx.size() < 2 * bin_size)
        throw std::invalid_argument("render_paired_histogram: need at least two full bins");
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return covariate[a] < covariate[b]; });
    std::vector<std::pair<std::string, std::vector<double>>> series(2);
    series[0].first = covariate_name + " lowest " + std::to_string(bin_size);
    series[1].first = covariate_name + " highest " + std::to_string(bin_size);
    for (size_t i = 0; i < bin_size; ++i) {
        series[0].second.push_back(response[idx[i]]);
        series[1].second.push_back(response[idx[idx.size() - bin_size + i]]);
    }
    (void)response_name;
    render_distribution(series, bins, out_stem);
}

std::vector<LayoutPoint> force_layout(std::uint32_t n,
                                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                      std::uint64_t seed, int iterations) {
    std::vector<LayoutPoint> pos(n);
    Rng rng(seed);
    for (auto& p : pos) {
        p.x = rng.next_real();
        p.y = rng.next_real();
    }
    if (n <= 1)
        return pos;
    const double k = std::sqrt(1.0 / n);
    std::vector<double> fx(n), fy(n);
    for (int it = 0; it < iterations; ++it) {
        double temp = 0.1 * (1.0 - static_cast<double>(it) / iterations) + 1e-3;
        std::fill(fx.begin(), fx.end(), 0.0);
        std::fill(fy.begin(), fy.end(), 0.0);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (static_cast<std::uint32_t>(i) == j)
                    continue;
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double d2 = dx * dx + dy * dy + 1e-9;
                double rep = k * k / d2;
                fx[i] += dx * rep;
                fy[i] += dy * rep;
            }
        }
        for (const auto& [a, b] : edges) {
            double dx = pos[a].x - pos[b].x;
            double dy = pos[a].y - pos[b].y;
            double d = std::sqrt(dx * dx + dy * dy) + 1e-9;
            double att = d / k; // F_a = d^2/k, applied along the unit vector
            fx[a] -= dx * att;
            fy[a] -= dy * att;
            fx[b] += dx * att;
            fy[b] += dy * att;
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            double d = std::sqrt(fx[i] * fx[i] + fy[i] * fy[i]);
            if (d > 0) {
                double step = std::min(d, temp) / d;
                pos[i].x += fx[i] * step;
                pos[i].y += fy[i] * step;
            }
        }
    }
    // rescale into the unit square
    double xmn = pos[0].x, xmx = pos[0].x, ymn = pos[0].y, ymx = pos[0].y;
    for (const auto& p : pos) {
        xmn = std::min(xmn, p.x);
        xmx = std::max(xmx, p.x);
        ymn = std::min(ymn, p.y);
        ymx = std::max(ymx, p.y);
    }
    for (auto& p : pos) {
        p.x = xmx > xmn ? (p.x - xmn) / (xmx - xmn) : 0.5;
        p.y = ymx > ymn ? (p.y - ymn) / (ymx - ymn) : 0.5;
    }
    return pos;
}

void render_network(const BcGraph& graph, const ClusterModel& model,
                    const std::vector<double>& size_by_node, const std::string& size_name,
                    std::uint32_t min_weight, std::uint64_t seed, const std::string& out_stem) {
    const std::uint32_t n = graph.node_count();
    if (model.dim != n)
        throw std::invalid_argument("render_network: model/graph mismatch");
    if (size_by_node.size() != n)
        throw std::invalid_argument("render_network: size column length mismatch");

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (const auto& [j, w] : graph.neighbors(i))
            if (i < j && w >= min_weight)
                edges.emplace_back(i, j);
    auto pos = force_layout(n, edges, seed);

    // palette per journal, in sorted journal order
    std::map<std::string, int> jcolor;
    for (const auto& j : graph.journals())
        jcolor.emplace(j, 0);
    int ci = 0;
    for (auto& [j, c] : jcolor)
        c = ci++;

    std::string csv = "doi,x,y,journal,cluster,degree," + size_name + "\n";
    for (std::uint32_t i = 0; i < n; ++i) {
        csv += csv_escape(graph.doi(i)) + ',' + fmt_double(pos[i].x) + ',' + fmt_double(pos[i].y) +
               ',' + csv_escape(graph.journals()[i]) + ',' + std::to_string(model.assignment[i]) +
               ',' + std::to_string(graph.degree(i)) + ',' + fmt_double(size_by_node[i]) + '\n';
    }
    write_file_atomic(out_stem + ".csv", csv);

    double smax = 0;
    for (double s : size_by_node)
        smax = std::max(smax, s);
    auto radius = [&](double s) {
        // node area proportional to the chosen column
        double r2 = smax > 0 ? s / smax : 0.0;
        return 2.0 + 10.0 * std::sqrt(std::max(0.0, r2));
    };
    auto X = [&](double x) { return kMarginL + x * (kWidth - kMarginL - kMarginR); };
    auto Y = [&](double y) { return kMarginT + y * (kHeight - kMarginT - kMarginB); };

    std::string svg = svg_header();
    for (const auto& [a, b] : edges)
        svg += "<line x1=\"" + fmt_double(X(pos[a].x)) + "\" y1=\"" + fmt_double(Y(pos[a].y)) +
               "\" x2=\"" + fmt_double(X(pos[b].x)) + "\" y2=\"" + fmt_double(Y(pos[b].y)) +
               "\" stroke=\"#dddddd\" stroke-width=\"0.4\"/>\n";
    for (std::uint32_t i = 0; i < n; ++i) {
        const char* color = kPalette[jcolor[graph.journals()[i]] % kPaletteSize];
        svg += "<circle cx=\"" + fmt_double(X(pos[i].x)) + "\" cy=\"" + fmt_double(Y(pos[i].y)) +
               "\" r=\"" + fmt_double(radius(size_by_node[i])) + "\" fill=\"" + color +
               "\" fill-opacity=\"0.8\"/>\n";
    }
    int li = 0;
    for (const auto& [j, c] : jcolor) {
        svg += "<rect x=\"" + fmt_double(kWidth - 150) + "\" y=\"" +
               fmt_double(kMarginT + 16.0 * li) + "\" width=\"10\" height=\"10\" fill=\"" +
               kPalette[c % kPaletteSize] + "\"/>\n";
        svg += svg_text(kWidth - 135, kMarginT + 16.0 * li + 9, j.empty() ? "(none)" : j, 11);
        ++li;
    }
    svg += "</svg>\n";
    write_file_atomic(out_stem + ".svg", svg);
}

std::vector<FigureSpec> load_figure_specs(const std::string& path) {
    json j = json::parse(read_file(path));
    if (!j.contains("figures") || !j["figures"].is_array())
        throw std::runtime_error("figure spec must contain a \"figures\" array: " + path);
    std::vector<FigureSpec> specs;
    for (const auto& f : j["figures"]) {
        FigureSpec s;
        std::string kind = f.at("kind").get<std::string>();
        if (kind == "distribution")
            s.kind = FigureKind::distribution;
        else if (kind == "quantile_scatter")
            s.kind = FigureKind::quantile_scatter;
        else if (kind == "paired_histogram")
            s.kind = FigureKind::paired_histogram;
        else if (kind == "network")
            s.kind = FigureKind::network_layout;
        else
            throw std::runtime_error("unknown figure kind: " + kind);
        s.name = f.at("name").get<std::string>();
        if (f.contains("series"))
            for (const auto& e : f["series"]) {
                SeriesSpec ss;
                ss.label = e.at("label").get<std::string>();
                if (e.contains("csv"))
                    ss.csv = e["csv"].get<std::string>();
                ss.column = e.at("column").get<std::string>();
                s.series.push_back(std::move(ss));
            }
        if (f.contains("bins"))
            s.bins = f["bins"].get<int>();
        if (f.contains("csv"))
            s.csv = f["csv"].get<std::string>();
        if (f.contains("covariate"))
            s.covariate = f["covariate"].get<std::string>();
        if (f.contains("response"))
            s.response = f["response"].get<std::string>();
        if (f.contains("bin_size"))
            s.bin_size = f["bin_size"].get<std::size_t>();
        if (f.contains("quantiles"))
            s.quantiles = f["quantiles"].get<std::vector<double>>();
        if (f.contains("log_x"))
            s.log_x = f["log_x"].get<bool>();
        if (f.contains("log_y"))
            s.log_y = f["log_y"].get<bool>();
        if (f.contains("graph"))
            s.graph_stem = f["graph"].get<std::string>();
        if (f.contains("model"))
            s.model_path = f["model"].get<std::string>();
        if (f.contains("metrics"))
            s.metrics_csv = f["metrics"].get<std::string>();
        if (f.contains("size_column"))
            s.size_column = f["size_column"].get<std::string>();
        if (f.contains("min_weight"))
            s.min_weight = f["min_weight"].get<std::uint32_t>();
        if (f.contains("seed"))
            s.layout_seed = f["seed"].get<std::uint64_t>();
        specs.push_back(std::move(s));
    }
    return specs;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& p,
                    const std::string& fallback) {
    if (p.empty())
        return fallback;
    std::filesystem::path fp(p);
    if (fp.is_absolute())
        return p;
    return (std::filesystem::path(base_dir) / fp).string();
}

} // namespace

void render_figure(const FigureSpec& spec, const std::string& base_dir,
                   const std::string& default_metrics_csv, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string stem = (std::filesystem::path(out_dir) / spec.name).string();
    switch (spec.kind) {
    case FigureKind::distribution: {
        std::vector<std::pair<std::string, std::vector<double>>> series;
        for (const auto& e : spec.series) {
            auto t = CsvTable::read(resolve(base_dir, e.csv, default_metrics_csv));
            series.emplace_back(e.label, t.numeric(e.column));
        }
        render_distribution(series, spec.bins, stem);
        break;
    }
    case FigureKind::quantile_scatter: {
        auto t = CsvTable::read(resolve(base_dir, spec.csv, default_metrics_csv));
        render_quantile_scatter(t.numeric(spec.covariate), t.numeric(spec.response),
                                spec.bin_size, spec.quantiles, spec.log_x, spec.log_y,
                                spec.covariate, spec.response, stem);
        break;
    }
    case FigureKind::paired_histogram: {
        auto t = CsvTable::read(resolve(base_dir, spec.csv, default_metrics_csv));
        render_paired_histogram(t.numeric(spec.covariate), t.numeric(spec.response),
                                spec.bin_size, spec.bins, spec.covariate, spec.response, stem);
        break;
    }
    case FigureKind::network_layout: {
        BcGraph graph = load_bc_graph(resolve(base_dir, spec.graph_stem, ""));
        ClusterModel model = load_cluster_model(resolve(base_dir, spec.model_path, ""));
        auto t = CsvTable::read(resolve(base_dir, spec.metrics_csv, default_metrics_csv));
        auto dois = t.strings("doi");
        auto vals = t.numeric(spec.size_column);
        std::vector<double> by_node(graph.node_count(), 0.0);
        std::map<std::string, double> lookup;
        for (size_t i = 0; i < dois.size(); ++i)
            lookup[dois[i]] = vals[i];
        for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
            auto it = lookup.find(graph.doi(i));
            if (it == lookup.end())
                throw std::runtime_error("render_figure: no metrics row for " + graph.doi(i));
            by_node[i] = it->second;
        }
        render_network(graph, model, by_node, spec.size_column, spec.min_weight, spec.layout_seed,
                       stem);
        break;
    }
    }
}

} // namespace report
} // namespace bcp
