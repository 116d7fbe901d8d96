#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sevt/series.hpp"

namespace sevt {

/// Ferro-Segers extremal-index estimate for one window size.
struct ThetaEstimate {
    std::size_t k = 1;
    double theta = 1.0;                 ///< clamped into (0, 1]
    std::size_t n_exceedances = 0;
    bool clamped = false;               ///< raw estimate exceeded 1
    bool clustering_saturated = false;  ///< all interexceedance gaps equal 1
    double threshold_quantile = 0.0;
    double threshold_window_span = 0.0;
};

/// Intervals estimator of the extremal index from the interexceedance times
/// of x > u(t), with the Ferro-Segers small-gap rule: when every gap is at
/// most 2 events the uncorrected moment ratio is used, otherwise the
/// (T-1)(T-2)-corrected variant. The threshold series must be aligned
/// index-wise with the data. Wait times are counted in index (event) units.
ThetaEstimate ferro_segers(const TimeSeries& series, const TimeSeries& threshold);

struct ThetaByWindow {
    std::vector<ThetaEstimate> estimates;  ///< entry i is window size i+1
    std::size_t requested_k_max = 0;
    /// Nonempty when the sweep stopped early; names the first failing k.
    std::string horizon_note;
};

/// theta_k for k = 1..k_max: each window size uses the moving minimum of the
/// series thresholded by its own moving quantile. Truncates at the first
/// window size with too few exceedances.
ThetaByWindow theta_by_window(const TimeSeries& series, std::size_t k_max, double q,
                              double window_span);

}  // namespace sevt
