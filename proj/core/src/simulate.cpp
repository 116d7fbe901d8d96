#include "sevt/simulate.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "sevt/error.hpp"

namespace sevt {

namespace {

std::vector<double> equally_spaced(const SyntheticSpec& spec) {
    const std::size_t n = spec.length;
    const double t_end = spec.t_end < spec.t_start ? static_cast<double>(n - 1) : spec.t_end;
    std::vector<double> t(n);
    const double step = n > 1 ? (t_end - spec.t_start) / static_cast<double>(n - 1) : 0.0;
    for (std::size_t i = 0; i < n; ++i) t[i] = spec.t_start + step * static_cast<double>(i);
    return t;
}

void check_spec(const SyntheticSpec& spec) {
    if (spec.length == 0) fail(Errc::invalid_spec, "synthetic length must be positive");
    if (spec.cluster_order < 0) fail(Errc::invalid_spec, "cluster order must be >= 0");
}

}  // namespace

TimeSeries sample_gev(const SyntheticSpec& spec) {
    check_spec(spec);
    TimeSeries out;
    out.covariates = equally_spaced(spec);
    out.values.resize(spec.length);
    Rng rng(spec.seed);
    for (std::size_t i = 0; i < spec.length; ++i) {
        const double t = out.covariates[i];
        const double sigma = spec.scale(t);
        if (!(sigma > 0.0))
            fail(Errc::invalid_spec, "scale model nonpositive at t=" + std::to_string(t));
        out.values[i] = gev_quantile(rng.uniform(), spec.xi, spec.location(t), sigma);
    }
    return out;
}

TimeSeries sample_moving_max(std::size_t n, int order, std::uint64_t seed) {
    if (n == 0) fail(Errc::invalid_spec, "synthetic length must be positive");
    if (order < 0) fail(Errc::invalid_spec, "order must be >= 0");
    Rng rng(seed);
    const std::size_t r = static_cast<std::size_t>(order);
    std::vector<double> eps(n + r);
    for (double& e : eps) e = -1.0 / std::log(rng.uniform());

    TimeSeries out;
    out.covariates.resize(n);
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.covariates[i] = static_cast<double>(i);
        double mx = eps[i];
        for (std::size_t j = 1; j <= r; ++j) mx = std::max(mx, eps[i + j]);
        out.values[i] = mx;
    }
    return out;
}

TimeSeries sample_storm_regime(const SyntheticSpec& spec) {
    check_spec(spec);
    if (!(spec.storm_persistence >= 0.0 && spec.storm_persistence < 1.0))
        fail(Errc::invalid_spec, "storm persistence must lie in [0,1)");
    const std::size_t n = spec.length;
    Rng rng(spec.seed);

    TimeSeries out;
    out.covariates = equally_spaced(spec);
    out.values.resize(n);

    if (!(spec.storm_rate > 0.0 && spec.storm_rate <= 1.0))
        fail(Errc::invalid_spec, "storm rate must lie in (0,1]");

    // Active storms as a max-heap over magnitude with lazy expiry.
    std::priority_queue<std::pair<double, std::size_t>> active;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = out.covariates[i];
        const double sigma = spec.scale(t);
        if (!(sigma > 0.0))
            fail(Errc::invalid_spec, "scale model nonpositive at t=" + std::to_string(t));

        if (spec.storm_rate >= 1.0 || rng.uniform() < spec.storm_rate) {
            const double u_dur = rng.uniform();
            std::size_t duration;
            if (spec.duration_pareto_alpha > 0.0) {
                duration = static_cast<std::size_t>(
                    std::ceil(std::pow(u_dur, -1.0 / spec.duration_pareto_alpha)));
                duration = std::min<std::size_t>(duration, n);
            } else {
                // Geometric with P(L >= k) = rho^(k-1).
                duration = spec.storm_persistence == 0.0
                               ? 1
                               : 1 + static_cast<std::size_t>(std::floor(
                                         std::log(u_dur) / std::log(spec.storm_persistence)));
            }
            const double magnitude =
                gev_quantile(rng.uniform(), spec.xi, spec.location(t), sigma);
            active.emplace(magnitude, i + duration);
        }
        while (!active.empty() && active.top().second <= i) active.pop();

        double level = -std::numeric_limits<double>::infinity();
        if (!active.empty()) level = active.top().first;
        if (spec.storm_rate < 1.0) {
            const double bg =
                gev_quantile(rng.uniform(), spec.xi, spec.background_fraction * spec.location(t),
                             spec.background_fraction * sigma);
            level = std::max(level, bg);
        }
        out.values[i] = level;
    }
    return out;
}

TimeSeries sample_clustered_gev(const SyntheticSpec& spec) {
    check_spec(spec);
    const std::size_t n = spec.length;
    const std::size_t r = static_cast<std::size_t>(spec.cluster_order);
    Rng rng(spec.seed);
    std::vector<double> eps(n + r);
    for (double& e : eps) e = -1.0 / std::log(rng.uniform());

    TimeSeries out;
    out.covariates = equally_spaced(spec);
    out.values.resize(n);
    const double denom = static_cast<double>(r + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double mx = eps[i];
        for (std::size_t j = 1; j <= r; ++j) mx = std::max(mx, eps[i + j]);
        const double frechet_unit = mx / denom;  // unit-Frechet margins
        // Standard GEV(xi) variate from a unit-Frechet one.
        const double z = std::fabs(spec.xi) < 1e-12
                             ? std::log(frechet_unit)
                             : (std::pow(frechet_unit, spec.xi) - 1.0) / spec.xi;
        const double t = out.covariates[i];
        const double sigma = spec.scale(t);
        if (!(sigma > 0.0))
            fail(Errc::invalid_spec, "scale model nonpositive at t=" + std::to_string(t));
        out.values[i] = spec.location(t) + sigma * z;
    }
    return out;
}

}  // namespace sevt
