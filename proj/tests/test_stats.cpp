#include "bcp/stats.hpp"

#include "bcp/rng.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bcp;
using namespace bcp::stats;

namespace {

std::vector<double> normals(Rng& rng, size_t n, double mu = 0, double sd = 1) {
    std::vector<double> v(n);
    for (auto& x : v)
        x = mu + sd * rng.next_normal();
    return v;
}

} // namespace

TEST_SUITE("stats") {

    TEST_CASE("quantile interpolates between order statistics") {
        std::vector<double> v{4, 1, 3, 2};
        CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
        CHECK(quantile(v, 0.7) == doctest::Approx(3.1));
        CHECK(quantile(v, 0.0) == 1.0);
        CHECK(quantile(v, 1.0) == 4.0);
        CHECK(median(std::vector<double>{5.0}) == 5.0);
        CHECK_THROWS(quantile(std::vector<double>{}, 0.5));
        CHECK_THROWS(quantile(v, 1.5));
    }

    TEST_CASE("quantile_bins: constant response gives constant quantiles") {
        Rng rng(1);
        std::vector<double> cov = normals(rng, 100);
        std::vector<double> resp(100, 7.25);
        auto t = quantile_bins(cov, resp, 20, std::vector<double>{0.5, 0.7, 0.9});
        REQUIRE(t.bins.size() == 5);
        CHECK(t.dropped_remainder == 0);
        for (const auto& b : t.bins)
            for (double q : b.q)
                CHECK(q == 7.25);
    }

    TEST_CASE("quantile_bins: exact bin sizes, ordering, and remainder accounting") {
        Rng rng(2);
        std::vector<double> cov = normals(rng, 107);
        std::vector<double> resp = normals(rng, 107);
        auto t = quantile_bins(cov, resp, 25, std::vector<double>{0.5, 0.7, 0.9});
        CHECK(t.bins.size() == 4);
        CHECK(t.dropped_remainder == 7);
        double prev_hi = -1e300;
        for (const auto& b : t.bins) {
            CHECK(b.count == 25);
            CHECK(b.covariate_lo >= prev_hi);
            prev_hi = b.covariate_hi;
            CHECK(b.q[0] <= b.q[1]);
            CHECK(b.q[1] <= b.q[2]);
        }
        CHECK_THROWS(quantile_bins(cov, resp, 200, std::vector<double>{0.5}));
        std::vector<double> short_resp(10);
        CHECK_THROWS(quantile_bins(cov, short_resp, 5, std::vector<double>{0.5}));
    }

    TEST_CASE("quantile_bins drops rows with missing values") {
        std::vector<double> cov{1, 2, std::nan(""), 4, 5};
        std::vector<double> resp{1, 2, 3, std::nan(""), 5};
        auto t = quantile_bins(cov, resp, 3, std::vector<double>{0.5});
        CHECK(t.dropped_missing == 2);
        CHECK(t.bins.size() == 1);
    }

    TEST_CASE("raising a response value never lowers a bin quantile") {
        Rng rng(3);
        std::vector<double> cov = normals(rng, 120);
        std::vector<double> resp = normals(rng, 120);
        std::vector<double> levels{0.5, 0.7, 0.9};
        auto before = quantile_bins(cov, resp, 30, levels);
        for (int trial = 0; trial < 10; ++trial) {
            auto bumped = resp;
            bumped[rng.next_index(bumped.size())] += 1.0 + rng.next_real();
            auto after = quantile_bins(cov, bumped, 30, levels);
            for (size_t b = 0; b < before.bins.size(); ++b)
                for (size_t q = 0; q < levels.size(); ++q)
                    CHECK(after.bins[b].q[q] >= before.bins[b].q[q] - 1e-12);
        }
    }

    TEST_CASE("wilcoxon: identical samples give p near one") {
        std::vector<double> a{1, 2, 3, 4, 5};
        auto r = wilcoxon_rank_sum(a, a, WilcoxonMode::normal_approx);
        CHECK(r.p_value > 0.99);
        auto e = wilcoxon_rank_sum(a, a, WilcoxonMode::exact);
        CHECK(e.p_value == 1.0);
    }

    TEST_CASE("wilcoxon: {1,2,3} vs {4,5,6} exact two-sided p = 0.1") {
        std::vector<double> a{1, 2, 3}, b{4, 5, 6};
        auto r = wilcoxon_rank_sum(a, b, WilcoxonMode::exact);
        CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(r.rank_sum_statistic == 6.0);
        CHECK(r.median_a == 2.0);
        CHECK(r.median_b == 5.0);
    }

    TEST_CASE("wilcoxon: exact mode refuses oversized samples, automatic picks for itself") {
        std::vector<double> big(15, 1.0), small(5, 2.0);
        CHECK_THROWS(wilcoxon_rank_sum(big, big, WilcoxonMode::exact));
        auto r = wilcoxon_rank_sum(big, small, WilcoxonMode::automatic);
        CHECK(std::string(r.method) == "exact");
        std::vector<double> larger(16, 1.0);
        auto r2 = wilcoxon_rank_sum(larger, small, WilcoxonMode::automatic);
        CHECK(std::string(r2.method) == "normal_approx");
        CHECK_THROWS(wilcoxon_rank_sum({}, small));
    }

    TEST_CASE("wilcoxon: normal approximation tracks exact enumeration on continuous data") {
        Rng rng(5);
        double worst = 0.0;
        for (int trial = 0; trial < 60; ++trial) {
            auto total = static_cast<size_t>(rng.next_int(12, 20));
            auto na = static_cast<size_t>(rng.next_int(4, static_cast<std::int64_t>(total) - 4));
            double shift = rng.next_real() * 2.0 - 0.5;
            std::vector<double> a, b;
            for (size_t i = 0; i < na; ++i)
                a.push_back(rng.next_normal());
            for (size_t i = 0; i < total - na; ++i)
                b.push_back(shift + rng.next_normal());
            auto approx = wilcoxon_rank_sum(a, b, WilcoxonMode::normal_approx);
            auto exact = wilcoxon_rank_sum(a, b, WilcoxonMode::exact);
            worst = std::max(worst, std::abs(approx.p_value - exact.p_value));
        }
        CHECK(worst <= 0.02);
    }

    TEST_CASE("wilcoxon: heavy ties stay within the lattice-gap envelope") {
        // with integer-valued data the exact p is a step function whose jumps
        // reach the central pmf (~0.08 at n=12), so only a looser envelope is
        // meaningful for the normal approximation
        Rng rng(6);
        double worst = 0.0;
        for (int trial = 0; trial < 60; ++trial) {
            auto total = static_cast<size_t>(rng.next_int(12, 20));
            auto na = static_cast<size_t>(rng.next_int(4, static_cast<std::int64_t>(total) - 4));
            std::vector<double> a, b;
            for (size_t i = 0; i < na; ++i)
                a.push_back(static_cast<double>(rng.next_int(0, 6)));
            for (size_t i = 0; i < total - na; ++i)
                b.push_back(static_cast<double>(rng.next_int(2, 8)));
            auto approx = wilcoxon_rank_sum(a, b, WilcoxonMode::normal_approx);
            auto exact = wilcoxon_rank_sum(a, b, WilcoxonMode::exact);
            worst = std::max(worst, std::abs(approx.p_value - exact.p_value));
        }
        CHECK(worst <= 0.1);
    }

    TEST_CASE("wilcoxon: exact enumeration with midranks, hand-computed tie cases") {
        // pooled {1,1,1,2} -> midranks 2,2,2,4; every split is equally extreme
        std::vector<double> a{1, 1}, b{1, 2};
        auto r = wilcoxon_rank_sum(a, b, WilcoxonMode::exact);
        CHECK(r.p_value == 1.0);
        // pooled {1,2,2,3} -> ranks 1,2.5,2.5,4; 4 of 6 splits are as extreme
        std::vector<double> c{1, 2}, d{2, 3};
        auto r2 = wilcoxon_rank_sum(c, d, WilcoxonMode::exact);
        CHECK(r2.p_value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }

    TEST_CASE("scale selection: normal data linear, lognormal data log") {
        Rng rng(7);
        auto lin = normals(rng, 400, 10.0, 2.0);
        CHECK(scale_select(lin) == Scale::linear);
        std::vector<double> logn(400);
        for (auto& v : logn)
            v = std::exp(1.0 + 1.5 * rng.next_normal());
        CHECK(scale_select(logn) == Scale::log);
        std::vector<double> constant(50, 3.0);
        CHECK(scale_select(constant) == Scale::linear);
        std::vector<double> with_neg{-1.0, 2.0, 3.0};
        CHECK(scale_select(with_neg) == Scale::linear);
    }

    TEST_CASE("log scale shifts by one only when zeros are present") {
        std::vector<double> zeros{0, 9, 99};
        auto t1 = apply_scale(zeros, Scale::log);
        CHECK(t1 == std::vector<double>{0, 1, 2});
        std::vector<double> pos{1, 10, 100};
        auto t2 = apply_scale(pos, Scale::log);
        CHECK(t2 == std::vector<double>{0, 1, 2});
    }

    TEST_CASE("pearson fixtures") {
        std::vector<double> x{1, 2, 3, 4, 5};
        std::vector<double> y, z;
        for (double v : x) {
            y.push_back(2 * v + 3);
            z.push_back(-v);
        }
        CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pearson(x, z) == doctest::Approx(-1.0).epsilon(1e-12));
        std::vector<double> flat(5, 1.0);
        CHECK_THROWS(pearson(x, flat));
        CHECK_THROWS(pearson(x, std::vector<double>{1.0}));
    }

    TEST_CASE("spearman is invariant under monotone transforms") {
        Rng rng(11);
        auto x = normals(rng, 200);
        std::vector<double> y;
        for (double v : x)
            y.push_back(std::exp(v)); // strictly monotone
        CHECK(spearman(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("t distribution p-values match numeric tail integration") {
        for (double t : {0.5, 1.0, 2.0, 3.5, 6.0})
            for (double dof : {3.0, 10.0, 57.0, 300.0}) {
                double mine = t_test_p(t, dof);
                double numeric = ref::t_tail_p_numeric(t, dof);
                CHECK(mine == doctest::Approx(numeric).epsilon(1e-8));
            }
    }

    TEST_CASE("ols: response identical to predictor") {
        Rng rng(13);
        NamedVector y{"y", normals(rng, 60)};
        NamedVector x{"x", y.values};
        auto rows = ols_regress(y, std::vector<NamedVector>{x}, {});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].coefficient == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rows[0].p_value <= 1e-250);
    }

    TEST_CASE("ols: standardized single-predictor coefficient equals pearson") {
        Rng rng(17);
        auto xv = normals(rng, 150);
        std::vector<double> yv;
        for (size_t i = 0; i < xv.size(); ++i)
            yv.push_back(0.7 * xv[i] + rng.next_normal());
        NamedVector y{"y", yv}, x{"x", xv};
        auto rows = ols_regress(y, std::vector<NamedVector>{x}, {});
        // both land on the linear scale here, so the slope is the correlation
        CHECK(rows[0].scale_flags.at("x") == "linear");
        CHECK(rows[0].coefficient == doctest::Approx(pearson(xv, yv)).epsilon(1e-10));
    }

    TEST_CASE("ols matches the normal-equations reference to 1e-8 relative") {
        Rng rng(19);
        for (int trial = 0; trial < 8; ++trial) {
            auto n = static_cast<size_t>(rng.next_int(30, 100));
            auto x1 = normals(rng, n);
            auto x2 = normals(rng, n);
            std::vector<double> yv;
            for (size_t i = 0; i < n; ++i)
                yv.push_back(0.5 * x1[i] - 0.3 * x2[i] + 0.8 * rng.next_normal());
            NamedVector y{"y", yv}, p1{"x1", x1};
            std::vector<std::vector<NamedVector>> adj{{NamedVector{"x2", x2}}};
            auto rows = ols_regress(y, std::vector<NamedVector>{p1}, adj);
            REQUIRE(rows.size() == 2);

            // reference path: same standardization, then explicit normal equations
            auto standardize = [](std::vector<double> v) {
                double m = 0;
                for (double a : v)
                    m += a;
                m /= v.size();
                double ss = 0;
                for (double a : v)
                    ss += (a - m) * (a - m);
                double sd = std::sqrt(ss / (v.size() - 1));
                for (double& a : v)
                    a = (a - m) / sd;
                return v;
            };
            auto ys = standardize(yv), x1s = standardize(x1), x2s = standardize(x2);
            auto biv = ref::ols_normal_equations({x1s}, ys);
            CHECK(rows[0].coefficient == doctest::Approx(biv.beta[1]).epsilon(1e-8));
            CHECK(rows[0].coefficient_sd == doctest::Approx(biv.se[1]).epsilon(1e-8));
            CHECK(rows[0].p_value == doctest::Approx(biv.p[1]).epsilon(1e-6));
            auto adj_fit = ref::ols_normal_equations({x1s, x2s}, ys);
            CHECK(rows[1].coefficient == doctest::Approx(adj_fit.beta[1]).epsilon(1e-8));
            CHECK(rows[1].coefficient_sd == doctest::Approx(adj_fit.se[1]).epsilon(1e-8));
            CHECK(rows[1].p_value == doctest::Approx(adj_fit.p[1]).epsilon(1e-6));
        }
    }

    TEST_CASE("ols: collinear adjuster is an error") {
        Rng rng(23);
        auto xv = normals(rng, 50);
        std::vector<double> twice;
        for (double v : xv)
            twice.push_back(2 * v);
        NamedVector y{"y", normals(rng, 50)};
        NamedVector x{"x", xv};
        std::vector<std::vector<NamedVector>> adj{{NamedVector{"x2", twice}}};
        CHECK_THROWS(ols_regress(y, std::vector<NamedVector>{x}, adj));
    }

    TEST_CASE("ols: listwise deletion happens per model") {
        Rng rng(29);
        auto xv = normals(rng, 80);
        auto lv = normals(rng, 80);
        std::vector<double> yv;
        for (size_t i = 0; i < xv.size(); ++i)
            yv.push_back(0.5 * xv[i] + rng.next_normal());
        auto with_gaps = lv;
        for (size_t i = 0; i < 20; ++i)
            with_gaps[i * 4] = std::nan("");
        NamedVector y{"y", yv}, x{"x", xv};
        std::vector<std::vector<NamedVector>> adj{{NamedVector{"l", with_gaps}}};
        auto rows = ols_regress(y, std::vector<NamedVector>{x}, adj);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].n_used == 80); // bivariate keeps every row
        CHECK(rows[1].n_used == 60); // adjusted model drops the NaN rows
    }

    TEST_CASE("ols: a predictor is never adjusted by itself") {
        Rng rng(31);
        auto lv = normals(rng, 40);
        NamedVector y{"y", normals(rng, 40)};
        NamedVector l{"length", lv};
        std::vector<std::vector<NamedVector>> adj{{l}};
        auto rows = ols_regress(y, std::vector<NamedVector>{l}, adj);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].model == "bivariate");
    }

    TEST_CASE("confounded coefficient shrinks once the confounder enters") {
        Rng rng(37);
        const size_t n = 4000;
        std::vector<double> x(n), l(n), yv(n);
        for (size_t i = 0; i < n; ++i) {
            double z = rng.next_normal();
            x[i] = z;
            l[i] = 0.6 * z + std::sqrt(1 - 0.36) * rng.next_normal();
            yv[i] = 0.4 * x[i] + 0.5 * l[i] + std::sqrt(0.35) * rng.next_normal();
        }
        NamedVector y{"y", yv}, px{"x", x};
        std::vector<std::vector<NamedVector>> adj{{NamedVector{"length", l}}};
        auto rows = ols_regress(y, std::vector<NamedVector>{px}, adj);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].coefficient > 0.4); // inflated by corr(x, length)
        CHECK(rows[1].coefficient == doctest::Approx(0.4).epsilon(0.1));
        CHECK(std::abs(rows[1].coefficient - 0.4) < 2.5 * rows[1].coefficient_sd);
    }

    TEST_CASE("wilcoxon variance degenerates gracefully when everything ties") {
        std::vector<double> a(30, 2.0), b(25, 2.0);
        auto r = wilcoxon_rank_sum(a, b, WilcoxonMode::normal_approx);
        CHECK(r.p_value == 1.0);
        CHECK(r.z_value == 0.0);
    }
}
