#pragma once

#include <cstddef>
#include <vector>

namespace sevt::detail {

/// Type-7 sample quantile (linear interpolation between order statistics,
/// h = (n-1)q). Reorders `scratch`.
double quantile_type7(std::vector<double>& scratch, double q);

double mean(const std::vector<double>& x);
double sample_variance(const std::vector<double>& x);

/// Upper-tail probability P(X > x) of a chi-squared variate with integer
/// degrees of freedom, via the closed-form recurrence
/// Q(df+2, x) = Q(df, x) + (x/2)^(df/2) exp(-x/2) / Gamma(df/2 + 1).
double chi_squared_upper_tail(double x, int df);

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_sf(double lambda);

/// Asymptotic CDF of the Anderson-Darling A^2 statistic for a fully
/// specified null (case 0), after Marsaglia & Marsaglia (2004).
double anderson_darling_cdf(double a2);

struct OlsFit {
    std::vector<double> coef;       ///< one per design column
    std::vector<double> residuals;  ///< y - X b
    std::vector<double> cov;        ///< row-major p x p coefficient covariance
    double r2 = 0.0;
    double adj_r2 = 0.0;
};

/// Ordinary (or weighted) least squares on a small design matrix given as
/// columns. Throws Errc::degenerate_design when X'WX is numerically singular.
/// Weights, when given, are inverse variances.
OlsFit ols(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
           const std::vector<double>* weights = nullptr);

/// Solves the symmetric positive-definite system via Cholesky; returns false
/// if the matrix is not positive-definite. `a` is row-major n x n.
bool cholesky_invert(std::vector<double>& a, std::size_t n);

}  // namespace sevt::detail
