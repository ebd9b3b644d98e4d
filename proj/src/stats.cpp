#include "bcp/stats.hpp"

#include "bcp/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcp {
namespace stats {

using nlohmann::ordered_json;

static constexpr double kPFloor = 1e-300;

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / M_SQRT2);
}

// Lentz continued fraction for the incomplete beta
static double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin)
        d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                         b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double t_test_p(double t, double dof) {
    double p = incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
    return std::clamp(p, kPFloor, 1.0);
}

double quantile(std::span<const double> values, double q) {
    if (values.empty())
        throw std::invalid_argument("quantile: empty input");
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("quantile: q outside [0,1]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    double h = q * static_cast<double>(v.size() - 1);
    auto lo = static_cast<size_t>(h);
    if (lo + 1 >= v.size())
        return v.back();
    return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

double median(std::span<const double> values) {
    return quantile(values, 0.5);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson: need equal non-trivial inputs");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("pearson: zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> midranks(std::span<const double> pooled) {
    const size_t n = pooled.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && pooled[idx[j + 1]] == pooled[idx[i]])
            ++j;
        double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k)
            ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    auto rx = midranks(x);
    auto ry = midranks(y);
    return pearson(rx, ry);
}

QuantileBinTable quantile_bins(std::span<const double> covariate, std::span<const double> response,
                               std::size_t bin_size, std::span<const double> quantiles,
                               std::string covariate_name, std::string response_name) {
    if (covariate.size() != response.size())
        throw std::invalid_argument("quantile_bins: length mismatch");
    QuantileBinTable t;
    t.covariate_name = std::move(covariate_name);
    t.response_name = std::move(response_name);
    t.bin_size = bin_size;
    t.quantiles.assign(quantiles.begin(), quantiles.end());

    std::vector<size_t> idx;
    idx.reserve(covariate.size());
    for (size_t i = 0; i < covariate.size(); ++i) {
        if (std::isnan(covariate[i]) || std::isnan(response[i]))
            ++t.dropped_missing;
        else
            idx.push_back(i);
    }
    if (bin_size == 0 || bin_size > idx.size())
        throw std::invalid_argument("quantile_bins: bin_size outside [1, sample size]");
    // ties keep original order
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return covariate[a] < covariate[b]; });

    size_t full = idx.size() / bin_size;
    t.dropped_remainder = idx.size() - full * bin_size;
    for (size_t b = 0; b < full; ++b) {
        QuantileBin bin;
        bin.count = bin_size;
        bin.covariate_lo = covariate[idx[b * bin_size]];
        bin.covariate_hi = covariate[idx[(b + 1) * bin_size - 1]];
        std::vector<double> resp(bin_size);
        for (size_t i = 0; i < bin_size; ++i)
            resp[i] = response[idx[b * bin_size + i]];
        for (double q : t.quantiles)
            bin.q.push_back(quantile(resp, q));
        t.bins.push_back(std::move(bin));
    }
    return t;
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                 std::span<const double> sample_b, WilcoxonMode mode) {
    if (sample_a.empty() || sample_b.empty())
        throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
    const size_t na = sample_a.size(), nb = sample_b.size(), n = na + nb;
    if (mode == WilcoxonMode::automatic)
        mode = n <= 20 ? WilcoxonMode::exact : WilcoxonMode::normal_approx;
    if (mode == WilcoxonMode::exact && n > 20)
        throw std::invalid_argument("wilcoxon_rank_sum: exact mode limited to combined n <= 20");

    std::vector<double> pooled(sample_a.begin(), sample_a.end());
    pooled.insert(pooled.end(), sample_b.begin(), sample_b.end());
    auto ranks = midranks(pooled);

    WilcoxonResult r;
    r.n_a = na;
    r.n_b = nb;
    r.median_a = median(sample_a);
    r.median_b = median(sample_b);
    double w = 0.0;
    for (size_t i = 0; i < na; ++i)
        w += ranks[i];
    r.rank_sum_statistic = w;
    const double expect = static_cast<double>(na) * (static_cast<double>(n) + 1.0) / 2.0;

    if (mode == WilcoxonMode::exact) {
        // every choice of na pooled rank positions is equally likely under H0
        const double margin = std::abs(w - expect) - 1e-9;
        std::uint64_t total = 0, extreme = 0;
        std::vector<size_t> comb(na);
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            double ws = 0.0;
            for (size_t pos : comb)
                ws += ranks[pos];
            ++total;
            if (std::abs(ws - expect) >= margin)
                ++extreme;
            // next combination
            size_t i = na;
            while (i > 0) {
                --i;
                if (comb[i] != i + n - na) {
                    ++comb[i];
                    for (size_t j = i + 1; j < na; ++j)
                        comb[j] = comb[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX || na == 0)
                break;
        }
        r.method = "exact";
        r.z_value = 0.0;
        r.p_value = static_cast<double>(extreme) / static_cast<double>(total);
        r.p_value = std::clamp(r.p_value, kPFloor, 1.0);
        return r;
    }

    // tie-corrected variance
    double tie_term = 0.0;
    {
        std::vector<double> sorted(pooled);
        std::sort(sorted.begin(), sorted.end());
        size_t i = 0;
        while (i < sorted.size()) {
            size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i])
                ++j;
            double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    double nn = static_cast<double>(n);
    double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                 ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    r.method = "normal_approx";
    if (var <= 0.0) {
        r.z_value = 0.0;
        r.p_value = 1.0;
        return r;
    }
    double num = std::max(0.0, std::abs(w - expect) - 0.5); // continuity correction
    r.z_value = num / std::sqrt(var);
    r.p_value = std::clamp(std::erfc(r.z_value / M_SQRT2), kPFloor, 1.0);
    return r;
}

double ks_statistic_vs_normal(std::span<const double> values) {
    const size_t n = values.size();
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (n < 2 || *mn == *mx)
        return 1.0; // degenerate; worst possible fit
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    if (ss == 0.0)
        return 1.0;
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> z(values.begin(), values.end());
    for (double& v : z)
        v = (v - mean) / sd;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double cdf = normal_cdf(z[i]);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / static_cast<double>(n)));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / static_cast<double>(n) - cdf));
    }
    return d;
}

std::vector<double> apply_scale(std::span<const double> values, Scale scale) {
    std::vector<double> out(values.begin(), values.end());
    if (scale == Scale::linear)
        return out;
    bool has_zero = false;
    for (double v : out)
        if (v == 0.0)
            has_zero = true;
    for (double& v : out)
        if (!std::isnan(v))
            v = has_zero ? std::log10(v + 1.0) : std::log10(v);
    return out;
}

Scale scale_select(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("scale_select: empty input");
    for (double v : values)
        if (v < 0.0)
            return Scale::linear;
    double lin = ks_statistic_vs_normal(values);
    auto logged = apply_scale(values, Scale::log);
    double lg = ks_statistic_vs_normal(logged);
    return lg < lin ? Scale::log : Scale::linear;
}

const char* scale_name(Scale s) {
    return s == Scale::linear ? "linear" : "log";
}

// ---- OLS -------------------------------------------------------------------

namespace {

struct OlsFit {
    std::vector<double> beta;
    std::vector<double> se;
    std::vector<double> p;
    size_t n = 0;
};

// Householder QR least squares; X includes the intercept column.
OlsFit solve_ols(std::vector<std::vector<double>> cols, const std::vector<double>& y) {
    const size_t p = cols.size();
    const size_t n = y.size();
    if (n <= p)
        throw std::invalid_argument("ols: not enough rows for the design");
    std::vector<double> rhs(y);
    std::vector<std::vector<double>>& a = cols; // column-major, factored in place

    const double rank_tol = 1e-10 * std::sqrt(static_cast<double>(n));
    std::vector<double> rdiag(p, 0.0);
    for (size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (size_t i = k; i < n; ++i)
            norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        if (norm < rank_tol)
            throw std::invalid_argument("ols: rank-deficient design (collinear columns)");
        if (a[k][k] < 0)
            norm = -norm;
        for (size_t i = k; i < n; ++i)
            a[k][i] /= norm;
        a[k][k] += 1.0;
        for (size_t j = k + 1; j < p; ++j) {
            double s = 0.0;
            for (size_t i = k; i < n; ++i)
                s += a[k][i] * a[j][i];
            s = -s / a[k][k];
            for (size_t i = k; i < n; ++i)
                a[j][i] += s * a[k][i];
        }
        double s = 0.0;
        for (size_t i = k; i < n; ++i)
            s += a[k][i] * rhs[i];
        s = -s / a[k][k];
        for (size_t i = k; i < n; ++i)
            rhs[i] += s * a[k][i];
        rdiag[k] = -norm;
    }

    // back substitution on R beta = Q^T y
    OlsFit fit;
    fit.n = n;
    fit.beta.assign(p, 0.0);
    for (size_t k = p; k-- > 0;) {
        double s = rhs[k];
        for (size_t j = k + 1; j < p; ++j)
            s -= a[j][k] * fit.beta[j];
        fit.beta[k] = s / rdiag[k];
    }

    double rss = 0.0;
    for (size_t i = p; i < n; ++i)
        rss += rhs[i] * rhs[i];
    double dof = static_cast<double>(n - p);
    double sigma2 = rss / dof;

    // columns of R^{-1}; (X'X)^{-1} = R^{-1} R^{-T}
    std::vector<std::vector<double>> rinv(p, std::vector<double>(p, 0.0));
    for (size_t j = 0; j < p; ++j) {
        rinv[j][j] = 1.0 / rdiag[j];
        for (size_t k = j; k-- > 0;) {
            double s = 0.0;
            for (size_t m = k + 1; m <= j; ++m)
                s += a[m][k] * rinv[j][m];
            rinv[j][k] = -s / rdiag[k];
        }
    }
    fit.se.assign(p, 0.0);
    fit.p.assign(p, 1.0);
    for (size_t k = 0; k < p; ++k) {
        double v = 0.0;
        for (size_t j = k; j < p; ++j)
            v += rinv[j][k] * rinv[j][k];
        fit.se[k] = std::sqrt(sigma2 * v);
        if (fit.se[k] > 0.0)
            fit.p[k] = t_test_p(fit.beta[k] / fit.se[k], dof);
        else
            fit.p[k] = fit.beta[k] == 0.0 ? 1.0 : kPFloor; // exact fit
    }
    return fit;
}

std::vector<double> standardize(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    if (sd == 0.0)
        throw std::invalid_argument("ols: constant variable after transform");
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out)
        x = (x - mean) / sd;
    return out;
}

} // namespace

std::vector<RegressionRow> ols_regress(const NamedVector& response,
                                       std::span<const NamedVector> predictors,
                                       std::span<const std::vector<NamedVector>> adjuster_sets) {
    const size_t n = response.values.size();
    for (const auto& p : predictors)
        if (p.values.size() != n)
            throw std::invalid_argument("ols_regress: predictor length mismatch: " + p.name);
    for (const auto& set : adjuster_sets)
        for (const auto& a : set)
            if (a.values.size() != n)
                throw std::invalid_argument("ols_regress: adjuster length mismatch: " + a.name);

    std::vector<RegressionRow> rows;
    for (const auto& focal : predictors) {
        // bivariate first, then one model per adjuster set
        for (size_t set_i = 0; set_i <= adjuster_sets.size(); ++set_i) {
            std::vector<const NamedVector*> vars{&response, &focal};
            std::string model_label = "bivariate";
            if (set_i > 0) {
                const auto& set = adjuster_sets[set_i - 1];
                bool overlap = false;
                std::string label;
                for (const auto& a : set) {
                    if (a.name == focal.name)
                        overlap = true;
                    label += (label.empty() ? "" : "+") + a.name;
                    vars.push_back(&a);
                }
                if (overlap)
                    continue; // a variable cannot adjust for itself
                model_label = label + "_adjusted";
            }

            std::vector<size_t> keep;
            for (size_t i = 0; i < n; ++i) {
                bool ok = true;
                for (const auto* v : vars)
                    if (std::isnan(v->values[i]))
                        ok = false;
                if (ok)
                    keep.push_back(i);
            }
            if (keep.size() < vars.size() + 2)
                throw std::invalid_argument("ols_regress: too few complete rows for " +
                                            focal.name);

            RegressionRow row;
            row.predictor = focal.name;
            row.model = model_label;
            row.n_used = keep.size();

            std::vector<std::vector<double>> design;
            design.emplace_back(keep.size(), 1.0); // intercept
            std::vector<double> y;
            for (size_t vi = 0; vi < vars.size(); ++vi) {
                std::vector<double> col;
                col.reserve(keep.size());
                for (size_t i : keep)
                    col.push_back(vars[vi]->values[i]);
                Scale sc = scale_select(col);
                row.scale_flags[vars[vi]->name] = scale_name(sc);
                auto transformed = standardize(apply_scale(col, sc));
                if (vi == 0)
                    y = std::move(transformed);
                else
                    design.push_back(std::move(transformed));
            }
            OlsFit fit = solve_ols(std::move(design), y);
            row.coefficient = fit.beta[1]; // focal predictor follows the intercept
            row.coefficient_sd = fit.se[1];
            row.p_value = fit.p[1];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ---- emission --------------------------------------------------------------

void write_quantile_table(const QuantileBinTable& t, const std::string& stem) {
    std::string csv = "bin,covariate_lo,covariate_hi,count";
    for (double q : t.quantiles)
        csv += ",q" + fmt_double(q * 100.0);
    csv += '\n';
    for (size_t b = 0; b < t.bins.size(); ++b) {
        csv += std::to_string(b);
        csv += ',' + fmt_double(t.bins[b].covariate_lo);
        csv += ',' + fmt_double(t.bins[b].covariate_hi);
        csv += ',' + std::to_string(t.bins[b].count);
        for (double v : t.bins[b].q)
            csv += ',' + fmt_double(v);
        csv += '\n';
    }
    write_file_atomic(stem + ".csv", csv);

    ordered_json j;
    j["covariate"] = t.covariate_name;
    j["response"] = t.response_name;
    j["bin_size"] = t.bin_size;
    j["quantiles"] = t.quantiles;
    j["dropped_remainder"] = t.dropped_remainder;
    j["dropped_missing"] = t.dropped_missing;
    ordered_json bins = ordered_json::array();
    for (const auto& b : t.bins) {
        ordered_json bj;
        bj["covariate_lo"] = b.covariate_lo;
        bj["covariate_hi"] = b.covariate_hi;
        bj["count"] = b.count;
        bj["q"] = b.q;
        bins.push_back(bj);
    }
    j["bins"] = bins;
    write_file_atomic(stem + ".json", j.dump(2) + "\n");
}

void write_wilcoxon(const WilcoxonResult& r, const std::string& stem) {
    std::string csv = "median_a,median_b,n_a,n_b,rank_sum,z,p,method\n";
    csv += fmt_double(r.median_a) + ',' + fmt_double(r.median_b) + ',' + std::to_string(r.n_a) +
           ',' + std::to_string(r.n_b) + ',' + fmt_double(r.rank_sum_statistic) + ',' +
           fmt_double(r.z_value) + ',' + fmt_double(r.p_value) + ',' + r.method + '\n';
    write_file_atomic(stem + ".csv", csv);

    ordered_json j;
    j["median_a"] = r.median_a;
    j["median_b"] = r.median_b;
    j["n_a"] = r.n_a;
    j["n_b"] = r.n_b;
    j["rank_sum_statistic"] = r.rank_sum_statistic;
    j["z_value"] = r.z_value;
    j["p_value"] = r.p_value;
    j["method"] = r.method;
    write_file_atomic(stem + ".json", j.dump(2) + "\n");
}

void write_regression(std::span<const RegressionRow> rows, const std::string& response_name,
                      const std::string& stem) {
    std::string csv = "predictor,model,coefficient,coefficient_sd,p_value,n,scales\n";
    for (const auto& r : rows) {
        std::string scales;
        for (const auto& [var, sc] : r.scale_flags)
            scales += (scales.empty() ? "" : ";") + var + "=" + sc;
        csv += csv_escape(r.predictor) + ',' + r.model + ',' + fmt_double(r.coefficient) + ',' +
               fmt_double(r.coefficient_sd) + ',' + fmt_double(r.p_value) + ',' +
               std::to_string(r.n_used) + ',' + csv_escape(scales) + '\n';
    }
    write_file_atomic(stem + ".csv", csv);

    ordered_json j;
    j["response"] = response_name;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json rj;
        rj["predictor"] = r.predictor;
        rj["model"] = r.model;
        rj["coefficient"] = r.coefficient;
        rj["coefficient_sd"] = r.coefficient_sd;
        rj["p_value"] = r.p_value;
        rj["n"] = r.n_used;
        ordered_json flags = ordered_json::object();
        for (const auto& [var, sc] : r.scale_flags)
            flags[var] = sc;
        rj["scales"] = flags;
        arr.push_back(rj);
    }
    j["rows"] = arr;
    write_file_atomic(stem + ".json", j.dump(2) + "\n");
}

} // namespace stats
} // namespace bcp
