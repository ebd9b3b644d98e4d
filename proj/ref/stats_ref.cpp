#include "reference.hpp"

#include <cmath>
#include <stdexcept>

namespace bcp {
namespace ref {

namespace {

// Gauss-Jordan inverse with partial pivoting
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = 1.0;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (std::abs(a[piv][col]) < 1e-12)
            throw std::invalid_argument("ols_normal_equations: singular design");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        double d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            double f = a[r][col];
            if (f == 0.0)
                continue;
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

double t_density(double u, double dof) {
    double lognorm = std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0) -
                     0.5 * std::log(dof * M_PI);
    return std::exp(lognorm - (dof + 1.0) / 2.0 * std::log1p(u * u / dof));
}

} // namespace

double t_tail_p_numeric(double t, double dof) {
    // two-sided tail mass, integrating u = |t| + s/(1-s) over s in [0,1)
    double at = std::abs(t);
    auto integrand = [&](double s) {
        double u = at + s / (1.0 - s);
        double jac = 1.0 / ((1.0 - s) * (1.0 - s));
        return t_density(u, dof) * jac;
    };
    // plain composite Simpson on a fine grid; the integrand is smooth and
    // the upper endpoint is pinched off just short of 1
    const int steps = 20000;
    const double b = 1.0 - 1e-9;
    double h = b / steps;
    double s = integrand(0.0) + integrand(b);
    for (int i = 1; i < steps; ++i)
        s += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    double tail = s * h / 3.0;
    return std::min(1.0, 2.0 * tail);
}

OlsRef ols_normal_equations(const std::vector<std::vector<double>>& columns,
                            const std::vector<double>& y) {
    const size_t n = y.size();
    const size_t p = columns.size() + 1; // + intercept
    std::vector<std::vector<double>> x(p, std::vector<double>(n, 1.0));
    for (size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != n)
            throw std::invalid_argument("ols_normal_equations: bad column length");
        x[c + 1] = columns[c];
    }
    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = 0; b < p; ++b)
            for (size_t i = 0; i < n; ++i)
                xtx[a][b] += x[a][i] * x[b][i];
        for (size_t i = 0; i < n; ++i)
            xty[a] += x[a][i] * y[i];
    }
    auto inv = invert(xtx);
    OlsRef fit;
    fit.beta.assign(p, 0.0);
    for (size_t a = 0; a < p; ++a)
        for (size_t b = 0; b < p; ++b)
            fit.beta[a] += inv[a][b] * xty[b];
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (size_t a = 0; a < p; ++a)
            pred += fit.beta[a] * x[a][i];
        rss += (y[i] - pred) * (y[i] - pred);
    }
    double dof = static_cast<double>(n - p);
    double sigma2 = rss / dof;
    fit.se.assign(p, 0.0);
    fit.p.assign(p, 1.0);
    for (size_t a = 0; a < p; ++a) {
        fit.se[a] = std::sqrt(sigma2 * inv[a][a]);
        if (fit.se[a] > 0.0)
            fit.p[a] = t_tail_p_numeric(fit.beta[a] / fit.se[a], dof);
        else
            fit.p[a] = fit.beta[a] == 0.0 ? 1.0 : 1e-300;
    }
    return fit;
}

} // namespace ref
} // namespace bcp
