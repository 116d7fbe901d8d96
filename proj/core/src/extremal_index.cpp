#include "sevt/extremal_index.hpp"

#include <algorithm>
#include <cmath>

#include "sevt/error.hpp"

namespace sevt {

ThetaEstimate ferro_segers(const TimeSeries& series, const TimeSeries& threshold) {
    if (series.size() != threshold.size())
        fail(Errc::misaligned, "threshold series must align index-wise with the data");

    std::vector<std::size_t> exceedances;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series.values[i] > threshold.values[i]) exceedances.push_back(i);

    const std::size_t n_exc = exceedances.size();
    if (n_exc < 3)
        fail(Errc::insufficient_exceedances,
             "need at least 3 exceedances, have " + std::to_string(n_exc));

    const std::size_t m = n_exc - 1;  // interexceedance count
    std::vector<double> gaps(m);
    double max_gap = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        gaps[j] = static_cast<double>(exceedances[j + 1] - exceedances[j]);
        max_gap = std::max(max_gap, gaps[j]);
    }

    ThetaEstimate est;
    est.n_exceedances = n_exc;

    double raw;
    if (max_gap <= 1.0) {
        // Every exceedance is adjacent: one solid run; the moment ratio is
        // degenerate (zero denominator). Report the run-size reciprocal.
        est.clustering_saturated = true;
        raw = 1.0 / static_cast<double>(n_exc);
    } else if (max_gap <= 2.0) {
        double num = 0.0, den = 0.0;
        for (double t : gaps) {
            num += t;
            den += t * (t - 1.0);
        }
        raw = 2.0 * num * num / (static_cast<double>(m) * den);
    } else {
        double num = 0.0, den = 0.0;
        for (double t : gaps) {
            num += t - 1.0;
            den += (t - 1.0) * (t - 2.0);
        }
        raw = 2.0 * num * num / (static_cast<double>(m) * den);
    }

    if (raw > 1.0) {
        est.theta = 1.0;
        est.clamped = !est.clustering_saturated;
    } else {
        est.theta = raw;
    }
    return est;
}

ThetaByWindow theta_by_window(const TimeSeries& series, std::size_t k_max, double q,
                              double window_span) {
    if (k_max == 0) fail(Errc::invalid_window, "k_max must be >= 1");
    ThetaByWindow out;
    out.requested_k_max = k_max;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const TimeSeries windowed = moving_minimum(series, k);
        const TimeSeries u = moving_quantile(windowed, window_span, q);
        try {
            ThetaEstimate est = ferro_segers(windowed, u);
            est.k = k;
            est.threshold_quantile = q;
            est.threshold_window_span = window_span;
            out.estimates.push_back(est);
        } catch (const Error& e) {
            if (e.code() != Errc::insufficient_exceedances) throw;
            out.horizon_note = "theta estimation stopped at k=" + std::to_string(k) + ": " +
                               e.what();
            break;
        }
    }
    return out;
}

}  // namespace sevt
