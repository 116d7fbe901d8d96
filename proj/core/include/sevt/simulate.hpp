#pragma once

#include <cstdint>
#include <random>

#include "sevt/gev.hpp"
#include "sevt/series.hpp"

namespace sevt {

/// Deterministic uniform generator for the synthetic oracles.
///
/// Algorithm: MT19937-64 (the 64-bit Mersenne Twister exactly as specified
/// for std::mt19937_64 in the C++ standard, seeded directly with the 64-bit
/// seed). Uniform doubles are formed from the top 53 bits of each output
/// word: u = ((x >> 11) + 0.5) / 2^53, which lies strictly inside (0,1).
/// The same seed therefore reproduces the same sequence on any conforming
/// platform, and the recipe above is sufficient to reimplement the stream
/// in another language.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_word() { return gen_(); }

    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

  private:
    std::mt19937_64 gen_;
};

enum class SyntheticProcess {
    iid_gev,        ///< independent draws from a (possibly nonstationary) GEV
    moving_max,     ///< moving maximum of unit-Frechet noise, theta = 1/(order+1)
    clustered_gev,  ///< moving-max dependence mapped onto GEV margins
    storm_regime    ///< overlapping storms with random durations (see below)
};

struct SyntheticSpec {
    SyntheticProcess process = SyntheticProcess::iid_gev;
    double xi = 0.1;
    ParamModel location = ParamModel::constant(0.0);
    ParamModel scale = ParamModel::constant(1.0);
    std::size_t length = 0;
    std::uint64_t seed = 0;
    double t_start = 0.0;
    double t_end = -1.0;  ///< defaults to length - 1 when negative
    int cluster_order = 0;
    /// storm_regime: geometric duration persistence rho (mean run 1/(1-rho)).
    double storm_persistence = 0.8;
    /// storm_regime: when > 0, durations are Pareto, L = ceil(u^(-1/alpha)),
    /// so residual storm length grows with the window size.
    double duration_pareto_alpha = 0.0;
    /// storm_regime: probability that a storm starts at each step. Below 1
    /// the gaps are filled by an independent GEV background at
    /// background_fraction of the local location/scale, making long
    /// successive-extreme runs genuinely rare.
    double storm_rate = 1.0;
    double background_fraction = 0.35;
};

/// Inverse-CDF sampling of the GEV at equally spaced covariates.
TimeSeries sample_gev(const SyntheticSpec& spec);

/// x_i = max(eps_i, ..., eps_{i+order}) with eps iid unit Frechet
/// (-1/ln u). True extremal index 1/(order+1). Covariates are 0..n-1.
TimeSeries sample_moving_max(std::size_t n, int order, std::uint64_t seed);

/// Moving-max dependence with GEV(xi, mu(t), sigma(t)) margins: the moving
/// maximum is rescaled to unit-Frechet margins and pushed through the GEV
/// quantile transform. Extremal index 1/(cluster_order+1).
TimeSeries sample_clustered_gev(const SyntheticSpec& spec);

/// Storm field: one storm starts at every step with magnitude drawn from
/// GEV(xi, mu(t), sigma(t)) and a random duration; the observation is the
/// largest active magnitude. With geometric durations the k-window minimum
/// keeps the Frechet shape at every k, the extremal index is flat near
/// (1 - persistence), and the location/scale of windowed block maxima decay
/// exponentially in k with base persistence^xi — a process for which the
/// fixed-shape scaling relation holds by construction.
TimeSeries sample_storm_regime(const SyntheticSpec& spec);

}  // namespace sevt
