#include "bcp/authors.hpp"
#include "bcp/bcgraph.hpp"
#include "bcp/cluster.hpp"
#include "bcp/corpus.hpp"
#include "bcp/metrics.hpp"
#include "bcp/report.hpp"
#include "bcp/stats.hpp"
#include "bcp/synth.hpp"
#include "bcp/table.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace bcp;

// metrics.csv / authors.csv column shorthand used by the paper's tables
std::string resolve_column(const CsvTable& t, const std::string& name) {
    if (t.column(name))
        return name;
    static const std::pair<const char*, const char*> aliases[] = {
        {"entropy", "pacs_entropy"},   {"length", "ref_length"},
        {"npapers", "n_papers"},       {"distance", "avg_distance"},
        {"degree", "avg_degree"},      {"betweenness", "avg_betweenness"},
        {"closeness", "avg_closeness"}, {"length", "avg_ref_length"},
    };
    for (const auto& [alias, real] : aliases)
        if (name == alias && t.column(real))
            return real;
    throw std::runtime_error("column not found (nor via aliases): " + name);
}

std::pair<std::string, std::string> split_csv_col(const std::string& arg) {
    auto pos = arg.rfind(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == arg.size())
        throw std::runtime_error("expected <csv-path>:<column>, got: " + arg);
    return {arg.substr(0, pos), arg.substr(pos + 1)};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ','))
        out.push_back(std::stoi(part));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"bibliographic-coupling analysis pipeline"};
    app.require_subcommand(1);

    // ---- ingest ----
    std::string citations_path, metadata_path, out_path;
    auto* ingest = app.add_subcommand("ingest", "parse citation/metadata files into a corpus cache");
    ingest->add_option("--citations", citations_path, "citations csv")->required();
    ingest->add_option("--metadata", metadata_path, "metadata json-lines")->required();
    ingest->add_option("--out", out_path, "corpus cache output")->required();
    ingest->callback([&] {
        auto load = load_corpus(citations_path, metadata_path);
        std::cerr << load.report.summary() << "\n";
        save_corpus_cache(load.corpus, out_path);
        std::cerr << "corpus cache written to " << out_path << "\n";
    });

    // ---- bcnet ----
    std::string corpus_path, graph_out;
    int year = 0;
    std::uint32_t min_weight = 1;
    bool include_unknown = false;
    auto* bcnet = app.add_subcommand("bcnet", "build the bibliographic-coupling graph for a year");
    bcnet->add_option("--corpus", corpus_path, "corpus cache")->required();
    bcnet->add_option("--year", year, "publication year")->required();
    bcnet->add_option("--out", graph_out, "output stem (.edges.csv/.meta.json)")->required();
    bcnet->add_option("--min-weight", min_weight, "drop links below this weight");
    bcnet->add_flag("--include-unknown-year-refs", include_unknown,
                    "count shared references whose year is unknown");
    bcnet->callback([&] {
        Corpus corpus = load_corpus_cache(corpus_path);
        BcBuildOptions opt{min_weight, include_unknown};
        BcGraph g = build_bc_graph(corpus, year, opt);
        save_bc_graph(g, graph_out);
        const auto& rep = g.build_report();
        std::cerr << "slice " << rep.slice_papers << " papers -> largest component "
                  << rep.kept_nodes << " nodes, " << rep.kept_edges << " edges\n";
    });

    // ---- cluster ----
    std::string graph_stem, model_out;
    int k = 20;
    std::uint64_t seed = 42;
    int restarts = 10, max_iter = 300;
    double tol = 1e-9;
    auto* cluster = app.add_subcommand("cluster", "k-means over binarized adjacency rows");
    cluster->add_option("--graph", graph_stem, "graph stem from bcnet")->required();
    cluster->add_option("--k", k, "number of clusters");
    cluster->add_option("--seed", seed, "PRNG seed");
    cluster->add_option("--restarts", restarts, "independent restarts");
    cluster->add_option("--max-iter", max_iter, "iteration cap");
    cluster->add_option("--tol", tol, "relative cost-improvement stop");
    cluster->add_option("--out", model_out, "model json output")->required();
    cluster->callback([&] {
        BcGraph g = load_bc_graph(graph_stem);
        ClusterModel m = fit_kmeans(g, k, seed, restarts, max_iter, tol);
        save_cluster_model(m, model_out);
        std::cerr << "k=" << k << " cost " << m.total_cost << " after "
                  << m.cost_trace.size() << " accepted iterations\n";
    });

    // ---- metrics ----
    std::string m_graph, m_model, m_corpus, m_out, horizons_arg = "2,10,20";
    double pacs_coverage = 0.8;
    int pacs_depth = 0;
    std::string edge_length = "inverse";
    auto* metrics = app.add_subcommand("metrics", "per-paper network and diversity measures");
    metrics->add_option("--graph", m_graph, "graph stem")->required();
    metrics->add_option("--model", m_model, "cluster model json")->required();
    metrics->add_option("--corpus", m_corpus, "corpus cache")->required();
    metrics->add_option("--horizons", horizons_arg, "citation horizons, years");
    metrics->add_option("--pacs-coverage", pacs_coverage, "coverage threshold for entropy");
    metrics->add_option("--pacs-depth", pacs_depth, "truncate PACS codes to N segments (0=full)");
    metrics->add_option("--edge-length", edge_length, "inverse|unit");
    metrics->add_option("--out", m_out, "metrics csv")->required();
    metrics->callback([&] {
        BcGraph g = load_bc_graph(m_graph);
        ClusterModel model = load_cluster_model(m_model);
        Corpus corpus = load_corpus_cache(m_corpus);
        MetricsOptions opt;
        opt.horizons = parse_int_list(horizons_arg);
        opt.pacs_coverage_threshold = pacs_coverage;
        opt.pacs_depth = pacs_depth;
        if (edge_length == "inverse")
            opt.edge_length = EdgeLength::inverse;
        else if (edge_length == "unit")
            opt.edge_length = EdgeLength::unit;
        else
            throw std::runtime_error("--edge-length must be inverse or unit");
        MetricsTable t = assemble_metrics(g, model, corpus, opt);
        write_metrics_csv(t, m_out);
        std::cerr << t.rows.size() << " metric rows -> " << m_out << "\n";
    });

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "statistical battery");
    stats_cmd->require_subcommand(1);

    std::string q_metrics, q_cov, q_resp, q_out, q_quantiles = "0.5,0.7,0.9";
    std::size_t q_bin = 400;
    auto* quantiles = stats_cmd->add_subcommand("quantiles", "quantile-binned conditionals");
    quantiles->add_option("--metrics", q_metrics, "input csv")->required();
    quantiles->add_option("--covariate", q_cov, "covariate column")->required();
    quantiles->add_option("--response", q_resp, "response column")->required();
    quantiles->add_option("--bin", q_bin, "points per bin");
    quantiles->add_option("--quantiles", q_quantiles, "comma-separated levels");
    quantiles->add_option("--out", q_out, "output stem (.csv/.json)")->required();
    quantiles->callback([&] {
        CsvTable t = CsvTable::read(q_metrics);
        std::string cov = resolve_column(t, q_cov);
        std::string resp = resolve_column(t, q_resp);
        std::vector<double> levels;
        for (const auto& part : split(q_quantiles, ','))
            levels.push_back(std::stod(part));
        auto table = stats::quantile_bins(t.numeric(cov), t.numeric(resp), q_bin, levels, cov, resp);
        stats::write_quantile_table(table, q_out);
        std::cerr << table.bins.size() << " bins -> " << q_out << ".{csv,json}\n";
    });

    std::string w_a, w_b, w_mode = "auto", w_out;
    auto* wilcoxon = stats_cmd->add_subcommand("wilcoxon", "two-sided rank-sum test");
    wilcoxon->add_option("--a", w_a, "<csv>:<column>")->required();
    wilcoxon->add_option("--b", w_b, "<csv>:<column>")->required();
    wilcoxon->add_option("--mode", w_mode, "auto|normal|exact");
    wilcoxon->add_option("--out", w_out, "output stem (.csv/.json)")->required();
    wilcoxon->callback([&] {
        auto [pa, ca] = split_csv_col(w_a);
        auto [pb, cb] = split_csv_col(w_b);
        CsvTable ta = CsvTable::read(pa);
        CsvTable tb = CsvTable::read(pb);
        auto va = ta.numeric(resolve_column(ta, ca));
        auto vb = tb.numeric(resolve_column(tb, cb));
        std::erase_if(va, [](double v) { return std::isnan(v); });
        std::erase_if(vb, [](double v) { return std::isnan(v); });
        stats::WilcoxonMode mode = stats::WilcoxonMode::automatic;
        if (w_mode == "normal")
            mode = stats::WilcoxonMode::normal_approx;
        else if (w_mode == "exact")
            mode = stats::WilcoxonMode::exact;
        else if (w_mode != "auto")
            throw std::runtime_error("--mode must be auto, normal or exact");
        auto r = stats::wilcoxon_rank_sum(va, vb, mode);
        stats::write_wilcoxon(r, w_out);
        std::cerr << "medians " << r.median_a << " vs " << r.median_b << ", p = " << r.p_value
                  << " (" << r.method << ")\n";
    });

    std::string r_metrics, r_response, r_predictors, r_out;
    std::vector<std::string> r_adjust;
    auto* regress = stats_cmd->add_subcommand("regress", "bivariate and adjusted OLS");
    regress->add_option("--metrics", r_metrics, "input csv")->required();
    regress->add_option("--response", r_response, "response column")->required();
    regress->add_option("--predictors", r_predictors, "comma-separated predictor columns")
        ->required();
    regress->add_option("--adjust", r_adjust,
                        "adjuster set (repeatable; comma-joined within a set)");
    regress->add_option("--out", r_out, "output stem (.csv/.json)")->required();
    regress->callback([&] {
        CsvTable t = CsvTable::read(r_metrics);
        auto named = [&](const std::string& name) {
            std::string col = resolve_column(t, name);
            return stats::NamedVector{name, t.numeric(col)};
        };
        stats::NamedVector response = named(r_response);
        std::vector<stats::NamedVector> predictors;
        for (const auto& p : split(r_predictors, ','))
            predictors.push_back(named(p));
        std::vector<std::vector<stats::NamedVector>> adjuster_sets;
        for (const auto& set : r_adjust) {
            std::vector<stats::NamedVector> vars;
            for (const auto& a : split(set, ','))
                vars.push_back(named(a));
            adjuster_sets.push_back(std::move(vars));
        }
        auto rows = stats::ols_regress(response, predictors, adjuster_sets);
        stats::write_regression(rows, r_response, r_out);
        std::cerr << rows.size() << " regression rows -> " << r_out << ".{csv,json}\n";
    });

    // ---- authors ----
    std::string a_corpus, a_window, a_graphs, a_out;
    int a_short = 0, a_long = 0;
    auto* authors = app.add_subcommand("authors", "author-level aggregation over a window");
    authors->add_option("--corpus", a_corpus, "corpus cache")->required();
    authors->add_option("--window", a_window, "year range lo:hi")->required();
    authors->add_option("--graphs", a_graphs,
                        "directory with bc_<year>.* and model_<year>.json")
        ->required();
    authors->add_option("--short-year", a_short, "short citation horizon year")->required();
    authors->add_option("--long-year", a_long, "long citation horizon year")->required();
    authors->add_option("--out", a_out, "authors csv")->required();
    authors->callback([&] {
        auto parts = split(a_window, ':');
        if (parts.size() != 2)
            throw std::runtime_error("--window must be lo:hi");
        int lo = std::stoi(parts[0]), hi = std::stoi(parts[1]);
        Corpus corpus = load_corpus_cache(a_corpus);
        std::map<int, BcGraph> graphs;
        std::map<int, ClusterModel> models;
        std::map<int, YearNetwork> per_year;
        for (int y = lo; y <= hi; ++y) {
            std::string stem = a_graphs + "/bc_" + std::to_string(y);
            graphs.emplace(y, load_bc_graph(stem));
            models.emplace(y, load_cluster_model(a_graphs + "/model_" + std::to_string(y) + ".json"));
            per_year[y] = YearNetwork{&graphs.at(y), &models.at(y)};
        }
        auto table = build_author_table(corpus, lo, hi, per_year, a_short, a_long);
        write_author_csv(table, a_out);
        std::cerr << table.size() << " authors -> " << a_out << "\n";
    });

    // ---- synth ----
    std::string s_config, s_out;
    auto* synth = app.add_subcommand("synth", "deterministic synthetic corpus with planted roles");
    synth->add_option("--config", s_config, "synth config json (defaults when omitted)");
    synth->add_option("--out", s_out, "output directory")->required();
    synth->callback([&] {
        SynthConfig cfg;
        if (!s_config.empty())
            cfg = load_synth_config(s_config);
        auto man = generate_synth_corpus(cfg, s_out);
        std::cerr << man.n_records << " records, " << man.n_edges << " citation edges -> "
                  << s_out << "\n";
    });

    // ---- report ----
    std::string rp_metrics, rp_figures, rp_out;
    auto* report_cmd = app.add_subcommand("report", "render figure specs to svg + csv");
    report_cmd->add_option("--metrics", rp_metrics, "default metrics csv")->required();
    report_cmd->add_option("--figures", rp_figures, "figures json spec")->required();
    report_cmd->add_option("--out", rp_out, "output directory")->required();
    report_cmd->callback([&] {
        auto specs = report::load_figure_specs(rp_figures);
        std::string base = std::filesystem::path(rp_figures).parent_path().string();
        if (base.empty())
            base = ".";
        for (const auto& spec : specs) {
            report::render_figure(spec, base, rp_metrics, rp_out);
            std::cerr << "figure " << spec.name << " -> " << rp_out << "\n";
        }
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
