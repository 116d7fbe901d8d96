#include "sevt/series.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "sevt/error.hpp"
#include "sevt/stats.hpp"

namespace sevt {

void TimeSeries::validate() const {
    if (values.empty()) fail(Errc::empty_series, "time series is empty");
    if (values.size() != covariates.size())
        fail(Errc::misaligned, "covariates and values differ in length");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || !std::isfinite(covariates[i]))
            fail(Errc::parse_error, "non-finite entry at index " + std::to_string(i));
        if (i > 0 && covariates[i] < covariates[i - 1])
            fail(Errc::misaligned, "covariates decrease at index " + std::to_string(i));
    }
}

TimeSeries moving_minimum(const TimeSeries& series, std::size_t k) {
    const std::size_t n = series.size();
    if (k == 0) fail(Errc::invalid_window, "window size k must be >= 1");
    if (k > n)
        fail(Errc::window_too_large,
             "window size " + std::to_string(k) + " exceeds series length " + std::to_string(n));

    TimeSeries out;
    out.values.reserve(n - k + 1);
    out.covariates.assign(series.covariates.begin(), series.covariates.begin() + (n - k + 1));

    // Monotonic deque of candidate minima indices.
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i) {
        while (!q.empty() && series.values[q.back()] >= series.values[i]) q.pop_back();
        q.push_back(i);
        if (i + 1 >= k) {
            const std::size_t start = i + 1 - k;
            if (q.front() < start) q.pop_front();
            out.values.push_back(series.values[q.front()]);
        }
    }
    return out;
}

BlockMaxSeries block_maxima(const TimeSeries& series, std::size_t m) {
    const std::size_t n = series.size();
    if (m == 0) fail(Errc::invalid_window, "block length m must be >= 1");
    if (m > n)
        fail(Errc::block_too_large,
             "block length " + std::to_string(m) + " exceeds series length " + std::to_string(n));

    BlockMaxSeries out;
    out.block_length = m;
    const std::size_t n_blocks = n / m;
    out.maxima.reserve(n_blocks);
    out.block_covariates.reserve(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const std::size_t lo = b * m;
        double mx = series.values[lo];
        for (std::size_t i = lo + 1; i < lo + m; ++i) mx = std::max(mx, series.values[i]);
        out.maxima.push_back(mx);
        if (m % 2 == 1) {
            out.block_covariates.push_back(series.covariates[lo + (m - 1) / 2]);
        } else {
            out.block_covariates.push_back(
                0.5 * (series.covariates[lo + m / 2 - 1] + series.covariates[lo + m / 2]));
        }
    }
    return out;
}

TimeSeries moving_quantile(const TimeSeries& series, double window_span, double q) {
    if (!(q > 0.0 && q < 1.0)) fail(Errc::invalid_quantile, "quantile q must lie in (0,1)");
    if (!(window_span > 0.0)) fail(Errc::invalid_span, "window_span must be positive");
    if (series.size() == 0) fail(Errc::empty_series, "time series is empty");

    const std::size_t n = series.size();
    const double half = window_span / 2.0;
    TimeSeries out;
    out.covariates = series.covariates;
    out.values.resize(n);

    std::vector<double> window;
    std::size_t prev_lo = 0, prev_hi = 0;
    double prev_value = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = series.covariates[i];
        const auto lo_it = std::lower_bound(series.covariates.begin(), series.covariates.end(),
                                            t - half);
        const auto hi_it = std::upper_bound(series.covariates.begin(), series.covariates.end(),
                                            t + half);
        const std::size_t lo = static_cast<std::size_t>(lo_it - series.covariates.begin());
        const std::size_t hi = static_cast<std::size_t>(hi_it - series.covariates.begin());
        if (have_prev && lo == prev_lo && hi == prev_hi) {
            out.values[i] = prev_value;
            continue;
        }
        window.assign(series.values.begin() + lo, series.values.begin() + hi);
        out.values[i] = detail::quantile_type7(window, q);
        prev_lo = lo;
        prev_hi = hi;
        prev_value = out.values[i];
        have_prev = true;
    }
    return out;
}

std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n == 0) fail(Errc::empty_series, "time series is empty");
    if (max_lag >= n)
        fail(Errc::invalid_lag,
             "max_lag " + std::to_string(max_lag) + " must be below series length " +
                 std::to_string(n));

    const double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) /
                        static_cast<double>(n);
    double denom = 0.0;
    for (double x : series.values) denom += (x - mean) * (x - mean);

    std::vector<double> acf(max_lag + 1, 0.0);
    acf[0] = 1.0;
    if (denom == 0.0) return acf;  // constant series: zero correlation at positive lags
    for (std::size_t h = 1; h <= max_lag; ++h) {
        double s = 0.0;
        for (std::size_t i = 0; i + h < n; ++i)
            s += (series.values[i] - mean) * (series.values[i + h] - mean);
        acf[h] = s / denom;
    }
    return acf;
}

TimeSeries drop_zeros(const TimeSeries& series) {
    TimeSeries out;
    out.covariates.reserve(series.size());
    out.values.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.values[i] != 0.0) {
            out.covariates.push_back(series.covariates[i]);
            out.values.push_back(series.values[i]);
        }
    }
    if (out.values.empty()) fail(Errc::empty_series, "all observations are zero");
    return out;
}

}  // namespace sevt
