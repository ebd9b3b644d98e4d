#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bcp {
namespace stats {

// ---- scalar helpers --------------------------------------------------------

double normal_cdf(double z);
// regularized incomplete beta I_x(a, b)
double incomplete_beta(double a, double b, double x);
// two-sided p-value of a t statistic with dof degrees of freedom
double t_test_p(double t, double dof);

// linear interpolation between order statistics (values need not be sorted)
double quantile(std::span<const double> values, double q);
double median(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);
// rank correlation with midranks for ties
double spearman(std::span<const double> x, std::span<const double> y);

// midranks of the pooled sample, tie groups averaged
std::vector<double> midranks(std::span<const double> pooled);

// ---- quantile-binned conditional distributions -----------------------------

struct QuantileBin {
    double covariate_lo = 0.0;
    double covariate_hi = 0.0;
    std::size_t count = 0;
    std::vector<double> q; // aligned with QuantileBinTable::quantiles
};

struct QuantileBinTable {
    std::string covariate_name;
    std::string response_name;
    std::size_t bin_size = 0;
    std::vector<double> quantiles;
    std::vector<QuantileBin> bins;
    std::size_t dropped_remainder = 0; // trailing rows not filling a bin
    std::size_t dropped_missing = 0;   // rows with NaN in either variable
};

// Sort by covariate (stable in original order), group into consecutive bins
// of exactly bin_size, compute the requested response quantiles per bin.
QuantileBinTable quantile_bins(std::span<const double> covariate, std::span<const double> response,
                               std::size_t bin_size, std::span<const double> quantiles,
                               std::string covariate_name = "covariate",
                               std::string response_name = "response");

// ---- Wilcoxon rank-sum -----------------------------------------------------

enum class WilcoxonMode { automatic, normal_approx, exact };

struct WilcoxonResult {
    double median_a = 0.0;
    double median_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    double rank_sum_statistic = 0.0; // rank sum of sample a, midranks
    double z_value = 0.0;            // 0 in exact mode
    double p_value = 1.0;
    const char* method = "normal_approx";
};

// Two-sided test for equal location. The normal approximation uses
// tie-corrected variance with continuity correction; exact mode enumerates
// every assignment of pooled ranks (combined n <= 20). `automatic` picks
// exact when feasible.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                 std::span<const double> sample_b,
                                 WilcoxonMode mode = WilcoxonMode::automatic);

// ---- scale selection -------------------------------------------------------

enum class Scale { linear, log };

// Kolmogorov-Smirnov distance of the standardized sample from a standard
// normal, on the linear scale vs the log scale; the smaller distance wins
// (ties and degenerate inputs go linear). Log means log10(x) for strictly
// positive data and log10(x+1) when zeros are present; any negative value
// forces linear.
Scale scale_select(std::span<const double> values);

std::vector<double> apply_scale(std::span<const double> values, Scale scale);
double ks_statistic_vs_normal(std::span<const double> values);
const char* scale_name(Scale s);

// ---- OLS regression --------------------------------------------------------

struct NamedVector {
    std::string name;
    std::vector<double> values; // NaN marks missing
};

struct RegressionRow {
    std::string predictor;
    std::string model; // "bivariate" or "<adjusters>_adjusted"
    double coefficient = 0.0;
    double coefficient_sd = 0.0;
    double p_value = 1.0;
    std::size_t n_used = 0;
    std::map<std::string, std::string> scale_flags; // variable -> linear|log
};

// For each focal predictor: a bivariate model plus one model per adjuster
// set. Rows with a missing value in any involved variable are deleted for
// that model only; every variable is scale-selected and z-standardized.
// Throws on rank-deficient designs.
std::vector<RegressionRow> ols_regress(const NamedVector& response,
                                       std::span<const NamedVector> predictors,
                                       std::span<const std::vector<NamedVector>> adjuster_sets);

// ---- emission --------------------------------------------------------------

void write_quantile_table(const QuantileBinTable& t, const std::string& stem);
void write_wilcoxon(const WilcoxonResult& r, const std::string& stem);
void write_regression(std::span<const RegressionRow> rows, const std::string& response_name,
                      const std::string& stem);

} // namespace stats
} // namespace bcp
