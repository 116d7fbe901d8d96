#pragma once

#include <cstddef>
#include <vector>

namespace sevt {

/// Covariate-indexed observations (t_i, x_i). Covariates must be
/// nondecreasing; ties are allowed (several events at one covariate value).
struct TimeSeries {
    std::vector<double> covariates;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    /// Throws Error if the container invariants are broken: equal nonzero
    /// lengths, nondecreasing covariates, all entries finite.
    void validate() const;
};

/// Block maxima together with a representative covariate per block (the
/// block midpoint). Trailing partial blocks are discarded.
struct BlockMaxSeries {
    std::vector<double> block_covariates;
    std::vector<double> maxima;
    std::size_t block_length = 0;

    std::size_t size() const { return maxima.size(); }
};

/// Minimum over a sliding window of k observations. Output j covers input
/// [j, j+k) and is labelled by the window-start covariate, so an exceedance
/// of output j certifies k successive exceedances of the input starting at j.
TimeSeries moving_minimum(const TimeSeries& series, std::size_t k);

/// Maxima over consecutive blocks of m observations; floor(n/m) blocks, the
/// trailing partial block is dropped. The block covariate is the covariate
/// midpoint of the block.
BlockMaxSeries block_maxima(const TimeSeries& series, std::size_t m);

/// Empirical q-quantile of all values whose covariate lies in the closed
/// window [t_i - window_span/2, t_i + window_span/2], for each i. Quantiles
/// interpolate linearly between order statistics (type-7, h = (n-1)q).
TimeSeries moving_quantile(const TimeSeries& series, double window_span, double q);

/// Sample autocorrelation at lags 0..max_lag; acf[0] == 1.
std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag);

/// Removes every observation with value exactly zero, preserving order.
TimeSeries drop_zeros(const TimeSeries& series);

}  // namespace sevt
