#include "bcp/cluster.hpp"

#include "bcp/stats.hpp"
#include "bcp/synth.hpp"
#include "helpers.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bcp;
using testutil::TempDir;

namespace {

BinaryRows random_rows(Rng& rng, std::uint32_t n, std::uint32_t dim, double density) {
    BinaryRows rows;
    rows.dim = dim;
    rows.support.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < dim; ++j)
            if (rng.next_real() < density)
                rows.support[i].push_back(j);
    return rows;
}

std::vector<double> dense_of(const BinaryRows& rows, std::uint32_t i) {
    std::vector<double> v(rows.dim, 0.0);
    for (auto j : rows.support[i])
        v[j] = 1.0;
    return v;
}

} // namespace

TEST_SUITE("cluster") {

    TEST_CASE("binarize_rows: triangle and star fixtures") {
        BcGraph tri = testutil::graph_from_edges(3, {{0, 1, 4}, {0, 2, 1}, {1, 2, 2}});
        BinaryRows rows = binarize_rows(tri);
        for (std::uint32_t i = 0; i < 3; ++i)
            CHECK(rows.support[i].size() == 2);

        BcGraph star = testutil::graph_from_edges(4, {{0, 1, 1}, {0, 2, 3}, {0, 3, 2}});
        BinaryRows srows = binarize_rows(star);
        CHECK(srows.support[0].size() == 3);
        for (std::uint32_t i = 1; i < 4; ++i) {
            CHECK(srows.support[i] == std::vector<std::uint32_t>{0});
        }
    }

    TEST_CASE("row density tracks the generator's link probabilities within 3 sigma") {
        SynthConfig cfg;
        cfg.seed = 21;
        cfg.papers_per_block = 60;
        cfg.n_bridges = 0;
        cfg.n_peripherals = 0;
        TempDir dir("cluster_density");
        auto man = generate_synth_corpus(cfg, dir.path.string());
        auto load = load_corpus(dir.file("citations.csv"), dir.file("metadata.jsonl"));
        BcGraph g = build_bc_graph(load.corpus, cfg.years[0]);
        BinaryRows rows = binarize_rows(g);

        std::uint64_t within_hits = 0, within_pairs = 0, between_hits = 0, between_pairs = 0;
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            for (std::uint32_t j = i + 1; j < g.node_count(); ++j) {
                bool same = man.blocks.at(g.doi(i)) == man.blocks.at(g.doi(j));
                bool linked = std::binary_search(rows.support[i].begin(), rows.support[i].end(), j);
                (same ? within_pairs : between_pairs)++;
                if (linked)
                    (same ? within_hits : between_hits)++;
            }
        auto check3sigma = [](std::uint64_t hits, std::uint64_t pairs, double p) {
            double sd = std::sqrt(p * (1 - p) / pairs);
            double got = static_cast<double>(hits) / pairs;
            CHECK(std::abs(got - p) <= 3 * sd + 1e-12);
        };
        check3sigma(within_hits, within_pairs, man.expected_within_density);
        check3sigma(between_hits, between_pairs, man.expected_between_density);
    }

    TEST_CASE("sparse distance equals the dense formula") {
        Rng rng(5);
        BinaryRows rows = random_rows(rng, 30, 40, 0.2);
        std::vector<std::vector<double>> centers;
        for (int c = 0; c < 4; ++c) {
            std::vector<double> ctr(rows.dim);
            for (auto& v : ctr)
                v = rng.next_real();
            centers.push_back(ctr);
        }
        for (std::uint32_t i = 0; i < rows.count(); ++i)
            for (const auto& c : centers) {
                double s = 0;
                for (double v : c)
                    s += v;
                CHECK(hamming_distance(rows.support[i], c, s, rows.dim) ==
                      doctest::Approx(ref::hamming_dense(dense_of(rows, i), c)).epsilon(1e-12));
            }
    }

    TEST_CASE("two well-separated blocks are recovered exactly with k=2") {
        SynthConfig cfg;
        cfg.seed = 31;
        cfg.papers_per_block = 50;
        cfg.n_bridges = 0;
        cfg.n_peripherals = 0;
        TempDir dir("cluster_recover");
        auto man = generate_synth_corpus(cfg, dir.path.string());
        auto load = load_corpus(dir.file("citations.csv"), dir.file("metadata.jsonl"));
        BcGraph g = build_bc_graph(load.corpus, cfg.years[0]);
        REQUIRE(g.node_count() == 100); // between-links keep the blocks connected
        ClusterModel m = fit_kmeans(g, 2, 42, 10);

        int mismatch_identity = 0, mismatch_swapped = 0;
        for (std::uint32_t i = 0; i < g.node_count(); ++i) {
            int block = man.blocks.at(g.doi(i))[0];
            if (m.assignment[i] != block)
                ++mismatch_identity;
            if (m.assignment[i] != 1 - block)
                ++mismatch_swapped;
        }
        CHECK(std::min(mismatch_identity, mismatch_swapped) == 0);
    }

    TEST_CASE("identical rows with k=1 collapse to zero distance") {
        BinaryRows rows;
        rows.dim = 6;
        rows.support.assign(5, {1, 3, 4});
        ClusterModel m = fit_kmeans(rows, 1, 7, 3);
        for (double d : m.distances)
            CHECK(d == 0.0);
        CHECK(m.total_cost == 0.0);
    }

    TEST_CASE("identical rows with k>1 still return a valid model via repair") {
        BinaryRows rows;
        rows.dim = 6;
        rows.support.assign(5, {0, 2});
        ClusterModel m = fit_kmeans(rows, 3, 7, 2);
        REQUIRE(m.assignment.size() == 5);
        for (int a : m.assignment) {
            CHECK(a >= 0);
            CHECK(a < 3);
        }
        for (double d : m.distances)
            CHECK(d == 0.0);
    }

    TEST_CASE("invalid arguments") {
        BinaryRows rows;
        rows.dim = 4;
        rows.support.assign(3, {0});
        CHECK_THROWS(fit_kmeans(rows, 4, 1));  // k > rows
        CHECK_THROWS(fit_kmeans(rows, 0, 1));
        CHECK_THROWS(fit_kmeans(rows, 1, 1, 0)); // restarts < 1
    }

    TEST_CASE("deterministic for a fixed seed, different for another") {
        Rng rng(19);
        BinaryRows rows = random_rows(rng, 60, 50, 0.15);
        ClusterModel a = fit_kmeans(rows, 4, 123, 5);
        ClusterModel b = fit_kmeans(rows, 4, 123, 5);
        CHECK(a.assignment == b.assignment);
        CHECK(a.distances == b.distances);
        CHECK(a.centers == b.centers);
        CHECK(a.total_cost == b.total_cost);
        CHECK(a.cost_trace == b.cost_trace);
    }

    TEST_CASE("accepted cost trace never increases") {
        Rng rng(23);
        for (int trial = 0; trial < 5; ++trial) {
            BinaryRows rows = random_rows(rng, 80, 60, 0.08);
            ClusterModel m = fit_kmeans(rows, 5, 100 + trial, 3);
            REQUIRE(!m.cost_trace.empty());
            for (size_t i = 1; i < m.cost_trace.size(); ++i)
                CHECK(m.cost_trace[i] <= m.cost_trace[i - 1]);
            CHECK(m.total_cost == m.cost_trace.back());
        }
    }

    TEST_CASE("relabeling clusters leaves every distance unchanged") {
        Rng rng(29);
        BinaryRows rows = random_rows(rng, 50, 40, 0.15);
        ClusterModel m = fit_kmeans(rows, 4, 11, 4);
        ClusterModel permuted = m;
        std::rotate(permuted.centers.begin(), permuted.centers.begin() + 1,
                    permuted.centers.end());
        for (std::uint32_t i = 0; i < rows.count(); ++i)
            CHECK(distance_to_nearest(permuted, rows.support[i], rows.dim) ==
                  doctest::Approx(m.distances[i]).epsilon(1e-12));
    }

    TEST_CASE("distances are true minima over the final centers") {
        Rng rng(37);
        BinaryRows rows = random_rows(rng, 70, 50, 0.12);
        ClusterModel m = fit_kmeans(rows, 6, 3, 3);
        for (std::uint32_t i = 0; i < rows.count(); ++i)
            CHECK(m.distances[i] ==
                  doctest::Approx(distance_to_nearest(m, rows.support[i], rows.dim))
                      .epsilon(1e-12));
    }

    TEST_CASE("distance_to_nearest fixtures") {
        ClusterModel m;
        m.k = 2;
        m.dim = 4;
        m.centers = {{1, 0, 1, 0}, {0.5, 0.5, 0.5, 0.5}};
        std::vector<std::uint32_t> row{0, 2}; // equals center 0
        CHECK(distance_to_nearest(m, row, 4) == 0.0);

        ClusterModel half;
        half.k = 1;
        half.dim = 4;
        half.centers = {{0.5, 0.5, 0.5, 0.5}};
        std::vector<std::uint32_t> any{1, 3};
        CHECK(distance_to_nearest(half, any, 4) == 0.5);

        CHECK_THROWS(distance_to_nearest(m, row, 5));
    }

    TEST_CASE("distance_to_nearest equals explicit enumeration on random instances") {
        Rng rng(41);
        BinaryRows rows = random_rows(rng, 12, 20, 0.3);
        ClusterModel m = fit_kmeans(rows, 3, 5, 2);
        for (std::uint32_t i = 0; i < rows.count(); ++i) {
            double best = 1e300;
            for (const auto& c : m.centers)
                best = std::min(best, ref::hamming_dense(dense_of(rows, i), c));
            CHECK(distance_to_nearest(m, rows.support[i], rows.dim) ==
                  doctest::Approx(best).epsilon(1e-12));
        }
    }

    TEST_CASE("distance ranking is stable between k=20 and k=100") {
        // needs rows >> k and slice-like sparse coupling, otherwise k=100
        // memorizes individual papers
        SynthConfig cfg;
        cfg.seed = 47;
        cfg.n_blocks = 6;
        cfg.papers_per_block = 250;
        cfg.shared_refs_within = {8, 12};
        cfg.block_pool_factor = 40;
        cfg.n_bridges = 12;
        cfg.n_peripherals = 75;
        cfg.citation_boost_core = 0.3; // keep the citer count (and runtime) down
        cfg.citation_boost_bridge = 0.5;
        TempDir dir("cluster_krobust");
        generate_synth_corpus(cfg, dir.path.string());
        auto load = load_corpus(dir.file("citations.csv"), dir.file("metadata.jsonl"));
        BcGraph g = build_bc_graph(load.corpus, cfg.years[0]);
        BinaryRows rows = binarize_rows(g);
        ClusterModel m20 = fit_kmeans(rows, 20, 42, 2);
        ClusterModel m100 = fit_kmeans(rows, 100, 42, 2);
        CHECK(m20.cost_trace.size() > 1); // Lloyd genuinely iterates here
        CHECK(stats::spearman(m20.distances, m100.distances) > 0.5);
    }

    TEST_CASE("model json round-trips") {
        Rng rng(53);
        BcGraph g = testutil::random_connected_graph(rng, 20, 4, 0.3);
        ClusterModel m = fit_kmeans(g, 3, 9, 3);
        TempDir dir("cluster_io");
        save_cluster_model(m, dir.file("m.json"));
        ClusterModel r = load_cluster_model(dir.file("m.json"));
        CHECK(r.k == m.k);
        CHECK(r.dim == m.dim);
        CHECK(r.nodes == m.nodes);
        CHECK(r.centers == m.centers);
        CHECK(r.assignment == m.assignment);
        CHECK(r.distances == m.distances);
        CHECK(r.total_cost == m.total_cost);
        CHECK(r.cost_trace == m.cost_trace);
    }
}
