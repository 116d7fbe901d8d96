#include "sevt/gof.hpp"

#include <algorithm>
#include <cmath>

#include "sevt/error.hpp"
#include "sevt/stats.hpp"

namespace sevt {

TestResult ks_test(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf) {
    if (sample.empty()) fail(Errc::empty_series, "empty sample");
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    TestResult res;
    res.statistic = d;
    res.p_value = detail::kolmogorov_sf(std::sqrt(n) * d);
    return res;
}

TestResult ad_test(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf) {
    if (sample.empty()) fail(Errc::empty_series, "empty sample");
    std::vector<double> u(sample.size());
    {
        std::vector<double> sorted = sample;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) u[i] = cdf(sorted[i]);
    }
    TestResult res;
    constexpr double kEps = 1e-15;
    for (double& v : u) {
        if (v < kEps || v > 1.0 - kEps) {
            v = std::clamp(v, kEps, 1.0 - kEps);
            res.boundary_clamped = true;
        }
    }
    const std::size_t n = u.size();
    const double dn = static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += (2.0 * static_cast<double>(i) + 1.0) *
             (std::log(u[i]) + std::log1p(-u[n - 1 - i]));
    }
    res.statistic = -dn - s / dn;
    res.p_value = std::clamp(1.0 - detail::anderson_darling_cdf(res.statistic), 0.0, 1.0);
    return res;
}

std::vector<std::pair<double, double>> qq_points(
    const std::vector<double>& sample, const std::function<double(double)>& quantile_fn) {
    if (sample.empty()) fail(Errc::empty_series, "empty sample");
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> pts(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        pts[i] = {quantile_fn((static_cast<double>(i) + 0.5) / n), sorted[i]};
    return pts;
}

double standard_gumbel_cdf(double z) { return std::exp(-std::exp(-z)); }

double standard_gumbel_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(Errc::invalid_probability, "probability must lie in (0,1)");
    return -std::log(-std::log(p));
}

GofReport gof_report(const std::vector<double>& sample,
                     const std::function<double(double)>& cdf, bool normalized) {
    GofReport rep;
    const TestResult ks = ks_test(sample, cdf);
    const TestResult ad = ad_test(sample, cdf);
    rep.ks_statistic = ks.statistic;
    rep.ks_p = ks.p_value;
    rep.ad_statistic = ad.statistic;
    rep.ad_p = ad.p_value;
    rep.n = sample.size();
    rep.normalized = normalized;
    return rep;
}

}  // namespace sevt
