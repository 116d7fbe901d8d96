#include "sevt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sevt/error.hpp"

namespace sevt::detail {

double quantile_type7(std::vector<double>& scratch, double q) {
    const std::size_t n = scratch.size();
    if (n == 0) fail(Errc::empty_series, "quantile of an empty window");
    if (n == 1) return scratch[0];
    const double h = static_cast<double>(n - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    std::nth_element(scratch.begin(), scratch.begin() + lo, scratch.end());
    const double x_lo = scratch[lo];
    if (frac == 0.0 || lo + 1 >= n) return x_lo;
    const double x_hi = *std::min_element(scratch.begin() + lo + 1, scratch.end());
    return x_lo + frac * (x_hi - x_lo);
}

double mean(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(const std::vector<double>& x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

double chi_squared_upper_tail(double x, int df) {
    if (df < 1) fail(Errc::invalid_comparison, "degrees of freedom must be >= 1");
    if (x <= 0.0) return 1.0;
    const double half = x / 2.0;
    double q, term;
    int k;
    if (df % 2 == 1) {
        q = std::erfc(std::sqrt(half));
        term = std::sqrt(half) * std::exp(-half) / std::tgamma(1.5);  // Q(1)->Q(3) increment
        k = 1;
    } else {
        q = std::exp(-half);
        term = half * std::exp(-half);  // (x/2)^1 e^{-x/2} / Gamma(2)
        k = 2;
    }
    while (k + 2 <= df) {
        q += term;
        k += 2;
        term *= half / (static_cast<double>(k) / 2.0);
    }
    return std::clamp(q, 0.0, 1.0);
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 1e-3) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double anderson_darling_cdf(double z) {
    if (z <= 0.0) return 0.0;
    if (z < 2.0) {
        return std::pow(z, -0.5) * std::exp(-1.2337141 / z) *
               (2.00012 +
                (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) *
                    z);
    }
    return std::exp(
        -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) *
                                          z) *
                               z));
}

namespace {

// Gaussian elimination with partial pivoting for small symmetric systems.
bool solve_inplace(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[best * n + col])) best = r;
        if (std::fabs(a[best * n + col]) < 1e-300) return false;
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
            std::swap(b[col], b[best]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        double s = b[col];
        for (std::size_t c = col + 1; c < n; ++c) s -= a[col * n + c] * b[c];
        b[col] = s / a[col * n + col];
    }
    return true;
}

}  // namespace

OlsFit ols(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
           const std::vector<double>* weights) {
    const std::size_t p = columns.size();
    const std::size_t n = y.size();
    if (p == 0 || n == 0) fail(Errc::degenerate_design, "empty regression design");
    for (const auto& c : columns)
        if (c.size() != n) fail(Errc::misaligned, "design column length mismatch");
    if (weights && weights->size() != n) fail(Errc::misaligned, "weight length mismatch");

    auto w = [&](std::size_t i) { return weights ? (*weights)[i] : 1.0; };

    // Normal equations X'WX b = X'Wy.
    std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w(i);
        for (std::size_t a = 0; a < p; ++a) {
            xty[a] += wi * columns[a][i] * y[i];
            for (std::size_t b = 0; b < p; ++b) xtx[a * p + b] += wi * columns[a][i] * columns[b][i];
        }
    }

    // Scale check for rank deficiency before solving.
    double scale = 0.0;
    for (double v : xtx) scale = std::max(scale, std::fabs(v));
    if (scale <= 0.0) fail(Errc::degenerate_design, "zero design matrix");

    OlsFit fit;
    fit.coef = xty;
    std::vector<double> lhs = xtx;
    if (!solve_inplace(lhs, fit.coef, p))
        fail(Errc::degenerate_design, "rank-deficient regression design");

    fit.residuals.resize(n);
    double ss_res = 0.0, sw = 0.0, wy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t a = 0; a < p; ++a) pred += fit.coef[a] * columns[a][i];
        fit.residuals[i] = y[i] - pred;
        ss_res += w(i) * fit.residuals[i] * fit.residuals[i];
        sw += w(i);
        wy += w(i) * y[i];
    }
    const double ybar = wy / sw;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss_tot += w(i) * (y[i] - ybar) * (y[i] - ybar);

    if (ss_tot <= 1e-300) {
        fit.r2 = ss_res <= 1e-18 ? 1.0 : 0.0;
    } else {
        fit.r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    }
    const double dof = static_cast<double>(n) - static_cast<double>(p);
    if (dof > 0.0 && n > 1) {
        fit.adj_r2 = 1.0 - (1.0 - fit.r2) * (static_cast<double>(n) - 1.0) / dof;
    } else {
        fit.adj_r2 = fit.r2;
    }

    // Coefficient covariance s^2 (X'WX)^-1 via column-wise solves.
    const double s2 = dof > 0.0 ? ss_res / dof : 0.0;
    fit.cov.assign(p * p, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        std::vector<double> e(p, 0.0);
        e[c] = 1.0;
        std::vector<double> a = xtx;
        if (!solve_inplace(a, e, p)) fail(Errc::degenerate_design, "singular design covariance");
        for (std::size_t r = 0; r < p; ++r) fit.cov[r * p + c] = s2 * e[r];
    }
    return fit;
}

bool cholesky_invert(std::vector<double>& a, std::size_t n) {
    // Factor a = L L'.
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l[i * n + i] = std::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    // Invert by solving for identity columns.
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> x(n, 0.0);
        x[c] = 1.0;
        for (std::size_t i = 0; i < n; ++i) {  // forward
            double s = x[i];
            for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
            x[i] = s / l[i * n + i];
        }
        for (std::size_t i = n; i-- > 0;) {  // backward with L'
            double s = x[i];
            for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
            x[i] = s / l[i * n + i];
        }
        for (std::size_t r = 0; r < n; ++r) inv[r * n + c] = x[r];
    }
    a = std::move(inv);
    return true;
}

}  // namespace sevt::detail
