#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace sevt {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool boundary_clamped = false;  ///< AD only: cdf values hit 0/1 and were clamped
};

/// One-sample Kolmogorov-Smirnov test against a fully specified CDF.
/// p-value from the asymptotic Kolmogorov distribution at sqrt(n) * D.
TestResult ks_test(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf);

/// Anderson-Darling test against a fully specified CDF (case 0); the
/// asymptotic p-value follows Marsaglia's approximation. CDF values at 0 or
/// 1 are clamped to [1e-15, 1-1e-15] and flagged.
TestResult ad_test(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf);

/// (theoretical, empirical) quantile pairs at plotting positions
/// (i - 0.5)/n over the sorted sample.
std::vector<std::pair<double, double>> qq_points(
    const std::vector<double>& sample, const std::function<double(double)>& quantile_fn);

/// Goodness-of-fit summary for one window size.
struct GofReport {
    double ks_statistic = 0.0;
    double ks_p = 1.0;
    double ad_statistic = 0.0;
    double ad_p = 1.0;
    std::size_t n = 0;
    bool normalized = false;  ///< data were Gumbel-normalized before testing
};

/// Standard Gumbel CDF, the reference distribution for normalized maxima.
double standard_gumbel_cdf(double z);
double standard_gumbel_quantile(double p);

/// Runs both tests on a sample against a CDF.
GofReport gof_report(const std::vector<double>& sample,
                     const std::function<double(double)>& cdf, bool normalized);

}  // namespace sevt
