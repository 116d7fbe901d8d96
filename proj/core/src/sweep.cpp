#include "sevt/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "sevt/error.hpp"
#include "sevt/stats.hpp"

namespace sevt {

namespace {

BlockMaxSeries shift_covariates(BlockMaxSeries bm, double offset) {
    for (double& t : bm.block_covariates) t -= offset;
    return bm;
}

double location_level_at_origin(const GevModel& model) {
    return model.location.form == ParamForm::exponential ? std::exp(model.location.c0)
                                                         : model.location.c0;
}

}  // namespace

SweepResult run_successive_sweep(const TimeSeries& series, const SweepConfig& config) {
    series.validate();
    if (config.k_max < 1) fail(Errc::invalid_window, "k_max must be >= 1");

    SweepResult sweep;
    sweep.scale_link = config.scale_form == ParamForm::exponential ? ScaleLink::log_link
                                                                   : ScaleLink::identity;

    // Covariate origin: the first block's covariate maps to 0 so that the
    // fitted intercepts are the t=0 parameters used by the scaling step.
    BlockMaxSeries bm1 = block_maxima(series, config.block_length);
    sweep.t_offset = bm1.block_covariates.front();
    bm1 = shift_covariates(std::move(bm1), sweep.t_offset);

    sweep.base_fit = fit_mle(bm1, config.location_form, config.scale_form);
    sweep.xi1 = sweep.base_fit.model.shape;
    if (sweep.base_fit.se_available) {
        sweep.xi1_se = sweep.base_fit.standard_errors.back();
        sweep.xi1_se_available = true;
    } else {
        sweep.notices.push_back(
            "k=1 shape standard error unavailable; estimation-horizon shape window skipped");
    }

    sweep.rows.reserve(static_cast<std::size_t>(config.k_max));
    for (int k = 1; k <= config.k_max; ++k) {
        KFitRow row;
        row.k = k;
        if (k == 1) {
            row.maxima = bm1;
            row.fixed_fit = sweep.base_fit;
            row.free_fit = sweep.base_fit;
        } else {
            if (static_cast<std::size_t>(k) > series.size()) {
                row.note = "window exceeds series length";
                sweep.rows.push_back(std::move(row));
                continue;
            }
            const TimeSeries windowed = moving_minimum(series, static_cast<std::size_t>(k));
            if (windowed.size() < config.block_length) {
                row.note = "not enough data for one block";
                sweep.rows.push_back(std::move(row));
                continue;
            }
            row.maxima = shift_covariates(block_maxima(windowed, config.block_length),
                                          sweep.t_offset);
            try {
                row.fixed_fit =
                    fit_mle(row.maxima, config.location_form, config.scale_form, sweep.xi1);
            } catch (const Error& e) {
                row.note = std::string("fixed-shape fit failed: ") + e.what();
            }
            try {
                row.free_fit = fit_mle(row.maxima, config.location_form, config.scale_form);
            } catch (const Error& e) {
                if (!row.note.empty()) row.note += "; ";
                row.note += std::string("free-shape fit failed: ") + e.what();
            }
        }
        row.n_maxima = row.maxima.size();
        if (row.fixed_fit) {
            try {
                const std::vector<double> normalized =
                    gumbel_normalize(row.maxima, row.fixed_fit->model);
                row.gof = gof_report(normalized,
                                     [](double z) { return standard_gumbel_cdf(z); }, true);
            } catch (const Error& e) {
                if (!row.note.empty()) row.note += "; ";
                row.note += std::string("normalization failed: ") + e.what();
            }
        }
        sweep.rows.push_back(std::move(row));
    }

    sweep.thetas = theta_by_window(series, static_cast<std::size_t>(config.k_max),
                                   config.threshold_q, config.threshold_window_span);
    if (!sweep.thetas.horizon_note.empty()) sweep.notices.push_back(sweep.thetas.horizon_note);

    // Estimation horizon: fit converged, both GOF p-values above alpha, the
    // free-shape estimate inside the k=1 shape window, a positive location
    // level, and a theta estimate for the same k.
    for (KFitRow& row : sweep.rows) {
        if (!row.fixed_fit || !row.fixed_fit->converged) continue;
        if (!row.gof || row.gof->ks_p <= config.gof_alpha || row.gof->ad_p <= config.gof_alpha)
            continue;
        if (sweep.xi1_se_available) {
            if (!row.free_fit) continue;
            const double dev = std::fabs(row.free_fit->model.shape - sweep.xi1);
            if (dev > config.shape_ci_z * sweep.xi1_se) continue;
        }
        if (!(location_level_at_origin(row.fixed_fit->model) > 0.0)) continue;
        if (static_cast<std::size_t>(row.k) > sweep.thetas.estimates.size()) continue;
        row.usable_for_scaling = true;
        sweep.k_f = std::max(sweep.k_f, row.k);
    }

    if (!sweep.rows.empty() && sweep.rows.front().usable_for_scaling) {
        ScalingInputs& in = sweep.scaling_inputs;
        for (const KFitRow& row : sweep.rows) {
            if (!row.usable_for_scaling) continue;
            in.k.push_back(row.k);
            in.mu_k0.push_back(location_level_at_origin(row.fixed_fit->model));
            in.sigma_k0.push_back(row.fixed_fit->model.scale.c0);
            in.theta_k.push_back(
                sweep.thetas.estimates[static_cast<std::size_t>(row.k - 1)].theta);
        }
        in.xi_1 = sweep.xi1;
        in.mu_10 = in.mu_k0.front();
        in.sigma_10 = in.sigma_k0.front();
        in.theta_1 = in.theta_k.front();
    } else {
        sweep.notices.push_back(
            "k=1 window not usable for scaling; scaling inference unavailable");
    }
    return sweep;
}

double extrapolate_theta(const ThetaByWindow& thetas, int k, ThetaExtrapolation mode) {
    if (thetas.estimates.empty()) fail(Errc::insufficient_data, "no theta estimates available");
    if (k < 1) fail(Errc::invalid_window, "window size k must be >= 1");
    const std::size_t n = thetas.estimates.size();
    if (static_cast<std::size_t>(k) <= n)
        return thetas.estimates[static_cast<std::size_t>(k - 1)].theta;
    if (mode == ThetaExtrapolation::flat || n < 2) return thetas.estimates[n - 1].theta;

    std::vector<double> ones(n, 1.0), ks(n), th(n);
    for (std::size_t i = 0; i < n; ++i) {
        ks[i] = static_cast<double>(thetas.estimates[i].k);
        th[i] = thetas.estimates[i].theta;
    }
    const detail::OlsFit line = detail::ols({ones, ks}, th);
    const double pred = line.coef[0] + line.coef[1] * static_cast<double>(k);
    return std::clamp(pred, 1e-6, 1.0);
}

GevModel build_inferred_model(const GevModel& base, double xi1, const ScalingLaw& law, int k,
                              double theta_k, double theta_1) {
    if (!(theta_k > 0.0 && theta_k <= 1.0) || !(theta_1 > 0.0 && theta_1 <= 1.0))
        fail(Errc::log_domain, "theta values must lie in (0,1]");
    const double g = law.evaluate(k);
    const double factor = g * std::pow(theta_k / theta_1, xi1);
    if (!(factor > 0.0) || !std::isfinite(factor))
        fail(Errc::log_domain, "scaling factor nonpositive at k=" + std::to_string(k));

    GevModel m = base;
    m.shape = xi1;
    m.shape_fixed = true;
    auto apply = [&](ParamModel& p) {
        if (p.form == ParamForm::exponential) {
            p.c0 += std::log(factor);  // slope carries over unchanged
        } else {
            p.c0 *= factor;
            p.c1 *= factor;
        }
    };
    apply(m.location);
    apply(m.scale);
    return m;
}

}  // namespace sevt
