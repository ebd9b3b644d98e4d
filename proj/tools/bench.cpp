// Times the parallel kernels against the serial reference implementations
// on synthetic workloads and cross-checks their outputs.

#include "bcp/bcgraph.hpp"
#include "bcp/centrality.hpp"
#include "bcp/cluster.hpp"
#include "bcp/synth.hpp"
#include "reference.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace bcp;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, double max_diff) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx   max|diff| %.3g\n", name, serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, max_diff);
}

} // namespace

int main(int argc, char** argv) {
    int papers_per_block = argc > 1 ? std::atoi(argv[1]) : 250;
    int kmeans_k = argc > 2 ? std::atoi(argv[2]) : 20;

    SynthConfig cfg;
    cfg.seed = 1234;
    cfg.papers_per_block = papers_per_block;
    cfg.n_peripherals = papers_per_block / 8;
    cfg.n_bridges = 8;
    std::string dir = (std::filesystem::temp_directory_path() / "bcp_bench").string();
    generate_synth_corpus(cfg, dir);
    auto load = load_corpus(dir + "/citations.csv", dir + "/metadata.jsonl");
    const Corpus& corpus = load.corpus;
    int year = cfg.years[0];

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP off)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    // bibliographic coupling: inverted index vs pairwise intersections
    auto slice = year_slice(corpus, year);
    auto t0 = Clock::now();
    auto oracle = ref::bc_pairwise_weights(corpus, slice, year);
    double serial_bc = ms_since(t0);
    t0 = Clock::now();
    BcGraph graph = build_bc_graph(corpus, year);
    double par_bc = ms_since(t0);
    double diff_bc = 0.0;
    for (const auto& [pair, w] : oracle) {
        auto i = graph.index_of(slice[pair.first]);
        auto j = graph.index_of(slice[pair.second]);
        if (i && j)
            diff_bc = std::max(diff_bc, std::abs(static_cast<double>(graph.weight(*i, *j)) - w));
    }
    row("bc graph build", serial_bc, par_bc, diff_bc);

    // betweenness: serial Brandes vs chunked parallel Brandes
    t0 = Clock::now();
    auto b_serial = ref::betweenness_brandes_serial(graph);
    double serial_b = ms_since(t0);
    t0 = Clock::now();
    auto cent = compute_centralities(graph);
    double par_b = ms_since(t0);
    double diff_b = 0.0;
    for (std::uint32_t i = 0; i < graph.node_count(); ++i)
        diff_b = std::max(diff_b, std::abs(b_serial[i] - cent.betweenness[i]));
    row("weighted betweenness", serial_b, par_b, diff_b);

    // k-means assignment: dense serial distances vs sparse parallel fit
    BinaryRows rows = binarize_rows(graph);
    t0 = Clock::now();
    ClusterModel model = fit_kmeans(rows, kmeans_k, 42, 1);
    double par_k = ms_since(t0);
    t0 = Clock::now();
    auto dense = ref::assign_dense(rows, model.centers);
    double serial_k = ms_since(t0);
    double diff_k = 0.0;
    for (std::uint32_t i = 0; i < rows.count(); ++i)
        diff_k = std::max(diff_k, std::abs(dense.dists[i] - model.distances[i]));
    row("k-means (fit vs 1 assign)", serial_k, par_k, diff_k);

    std::filesystem::remove_all(dir);
    return 0;
}
