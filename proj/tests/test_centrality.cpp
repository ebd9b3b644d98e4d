#include "bcp/centrality.hpp"

#include "helpers.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <cmath>

using namespace bcp;

TEST_SUITE("centrality") {

    TEST_CASE("path graph: the middle vertex carries the single pair") {
        BcGraph g = testutil::graph_from_edges(3, {{0, 1, 1}, {1, 2, 1}});
        auto b = weighted_betweenness(g);
        CHECK(b[0] == 0.0);
        CHECK(b[2] == 0.0);
        CHECK(b[1] == 1.0); // ordered pairs summed, divided by two
    }

    TEST_CASE("star closeness: hub 1/3, leaves 1/5") {
        BcGraph g = testutil::graph_from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
        auto k = weighted_closeness(g);
        CHECK(k[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        for (int i = 1; i < 4; ++i)
            CHECK(k[i] == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    }

    TEST_CASE("two nodes with weight w have closeness w") {
        BcGraph g = testutil::graph_from_edges(2, {{0, 1, 4}});
        auto k = weighted_closeness(g);
        CHECK(k[0] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(k[1] == doctest::Approx(4.0).epsilon(1e-12));
    }

    TEST_CASE("5-node weighted graph equals the exhaustive oracle") {
        BcGraph g = testutil::graph_from_edges(
            5, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 4, 1}, {0, 4, 2}, {1, 3, 1}});
        auto fast = weighted_betweenness(g);
        auto slow = ref::betweenness_exhaustive(g);
        for (int i = 0; i < 5; ++i)
            CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
    }

    TEST_CASE("betweenness equals exhaustive enumeration on random small graphs") {
        Rng rng(101);
        for (int trial = 0; trial < 25; ++trial) {
            auto n = static_cast<std::uint32_t>(rng.next_int(3, 8));
            BcGraph g = testutil::random_connected_graph(rng, n, 3, 0.35);
            auto fast = weighted_betweenness(g);
            auto slow = ref::betweenness_exhaustive(g);
            for (std::uint32_t i = 0; i < n; ++i)
                CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
        }
    }

    TEST_CASE("closeness matches the Floyd-Warshall oracle on random graphs") {
        Rng rng(103);
        for (int trial = 0; trial < 5; ++trial) {
            auto n = static_cast<std::uint32_t>(rng.next_int(10, 50));
            BcGraph g = testutil::random_connected_graph(rng, n, 5, 0.15);
            auto k = weighted_closeness(g);
            auto oracle = ref::closeness_from_apsp(ref::floyd_warshall(g));
            for (std::uint32_t i = 0; i < n; ++i)
                CHECK(k[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
        }
    }

    TEST_CASE("a node bridging two cliques has strictly maximal betweenness") {
        // cliques {0,1,2} and {4,5,6}, node 3 joins them
        std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t i : {0, 1, 2})
            for (std::uint32_t j : {0, 1, 2})
                if (i < j)
                    edges.emplace_back(i, j, 2);
        for (std::uint32_t i : {4, 5, 6})
            for (std::uint32_t j : {4, 5, 6})
                if (i < j)
                    edges.emplace_back(i, j, 2);
        edges.emplace_back(2, 3, 2);
        edges.emplace_back(3, 4, 2);
        BcGraph g = testutil::graph_from_edges(7, edges);
        auto b = weighted_betweenness(g);
        for (int i = 0; i < 7; ++i)
            if (i != 3)
                CHECK(b[3] > b[i]);
    }

    TEST_CASE("scaling all weights leaves betweenness fixed and scales closeness") {
        Rng rng(107);
        BcGraph g = testutil::random_connected_graph(rng, 20, 4, 0.25);
        std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> scaled;
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            for (const auto& [j, w] : g.neighbors(i))
                if (i < j)
                    scaled.emplace_back(i, j, 3 * w);
        BcGraph g3 = testutil::graph_from_edges(20, scaled);
        auto c1 = compute_centralities(g);
        auto c3 = compute_centralities(g3);
        for (std::uint32_t i = 0; i < 20; ++i) {
            CHECK(c3.betweenness[i] == doctest::Approx(c1.betweenness[i]).epsilon(1e-9));
            CHECK(c3.closeness[i] == doctest::Approx(3.0 * c1.closeness[i]).epsilon(1e-9));
        }
    }

    TEST_CASE("unit edge length ignores the weights") {
        BcGraph weighted = testutil::graph_from_edges(3, {{0, 1, 9}, {1, 2, 1}});
        BcGraph uniform = testutil::graph_from_edges(3, {{0, 1, 1}, {1, 2, 1}});
        auto a = compute_centralities(weighted, EdgeLength::unit);
        auto b = compute_centralities(uniform, EdgeLength::unit);
        for (int i = 0; i < 3; ++i) {
            CHECK(a.betweenness[i] == b.betweenness[i]);
            CHECK(a.closeness[i] == b.closeness[i]);
        }
    }

    TEST_CASE("parallel kernel agrees with the serial Brandes reference at size") {
        Rng rng(109);
        BcGraph g = testutil::random_connected_graph(rng, 120, 6, 0.08);
        auto fast = weighted_betweenness(g);
        auto slow = ref::betweenness_brandes_serial(g);
        double max_b = 1.0;
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            max_b = std::max(max_b, slow[i]);
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            CHECK(std::abs(fast[i] - slow[i]) <= 1e-9 * max_b);
    }
}
