#include "sevt/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sevt/error.hpp"

namespace sevt {

double return_level(const GevModel& model, double return_period_blocks, double t) {
    if (!(return_period_blocks > 1.0))
        fail(Errc::invalid_period, "return period must exceed one block");
    const EvaluatedParams p = evaluate_params(model, t);
    return gev_quantile(1.0 - 1.0 / return_period_blocks, p.xi, p.mu, p.sigma);
}

double horizon_return_level(const GevModel& model, std::pair<double, double> covariate_range,
                            double blocks_per_unit) {
    const auto [t0, t1] = covariate_range;
    if (!(t1 > t0)) fail(Errc::invalid_horizon, "covariate range must have positive length");
    if (!(blocks_per_unit > 0.0)) fail(Errc::invalid_horizon, "blocks_per_unit must be positive");

    const double span_blocks = (t1 - t0) * blocks_per_unit;
    const std::size_t n_blocks = static_cast<std::size_t>(span_blocks + 1e-9);
    if (n_blocks < 1) fail(Errc::invalid_horizon, "horizon shorter than one block");

    const double width = 1.0 / blocks_per_unit;
    std::vector<double> mu(n_blocks), sigma(n_blocks);
    double mu_bar = 0.0, sigma_bar = 0.0;
    for (std::size_t j = 0; j < n_blocks; ++j) {
        const EvaluatedParams p =
            evaluate_params(model, t0 + (static_cast<double>(j) + 0.5) * width);
        mu[j] = p.mu;
        sigma[j] = p.sigma;
        mu_bar += p.mu;
        sigma_bar += p.sigma;
    }
    mu_bar /= static_cast<double>(n_blocks);
    sigma_bar /= static_cast<double>(n_blocks);

    const double xi = model.shape;
    auto expected_exceedances = [&](double z) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_blocks; ++j) s += 1.0 - gev_cdf(z, xi, mu[j], sigma[j]);
        return s;
    };

    // Expanding bracket around the pooled-parameter guess.
    const double p_guess =
        n_blocks > 1 ? 1.0 - 1.0 / static_cast<double>(n_blocks) : std::exp(-1.0);
    double lo = gev_quantile(p_guess, xi, mu_bar, sigma_bar);
    double hi = lo;
    double step = std::max(sigma_bar, 0.1 * (std::fabs(lo) + 1.0));
    while (expected_exceedances(lo) < 1.0) {
        lo -= step;
        step *= 2.0;
        if (step > 1e300) fail(Errc::invalid_horizon, "failed to bracket the horizon level");
    }
    step = std::max(sigma_bar, 0.1 * (std::fabs(hi) + 1.0));
    while (expected_exceedances(hi) >= 1.0) {
        hi += step;
        step *= 2.0;
        if (step > 1e300) fail(Errc::invalid_horizon, "failed to bracket the horizon level");
    }
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (expected_exceedances(mid) >= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)})) break;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> quantile_table(const GevModel& model, double t,
                                   const std::vector<double>& probs) {
    const EvaluatedParams p = evaluate_params(model, t);
    std::vector<double> out;
    out.reserve(probs.size());
    double prev = -1.0;
    for (double q : probs) {
        if (!(q > 0.0 && q < 1.0)) fail(Errc::invalid_probability, "probability outside (0,1)");
        if (q < prev) fail(Errc::invalid_probability, "probabilities must be sorted ascending");
        prev = q;
        out.push_back(gev_quantile(q, p.xi, p.mu, p.sigma));
    }
    return out;
}

PermutationCiResult permutation_ci(const ParamCis& cis, int samples_per_param,
                                   ParamForm location_form, ParamForm scale_form,
                                   std::pair<double, double> feasibility_range,
                                   const std::function<double(const GevModel&)>& target) {
    if (samples_per_param < 2)
        fail(Errc::config_error, "samples_per_param must be at least 2");
    for (const ParamCi* ci : {&cis.mu0, &cis.mu1, &cis.sigma0, &cis.sigma1, &cis.xi}) {
        if (!std::isfinite(ci->lo) || !std::isfinite(ci->hi) || ci->hi < ci->lo)
            fail(Errc::config_error, "parameter confidence intervals must be finite");
    }

    const int s = samples_per_param;
    auto grid_value = [&](const ParamCi& ci, int i) {
        if (s == 1) return 0.5 * (ci.lo + ci.hi);
        return ci.lo + (ci.hi - ci.lo) * static_cast<double>(i) / static_cast<double>(s - 1);
    };

    auto make_model = [&](double mu0, double mu1, double s0, double s1, double xi) {
        GevModel m;
        m.shape = xi;
        m.location = ParamModel{location_form, mu0, mu1};
        m.scale = ParamModel{scale_form, s0, s1};
        return m;
    };
    auto feasible = [&](const GevModel& m) {
        return m.scale(feasibility_range.first) > 0.0 && m.scale(feasibility_range.second) > 0.0;
    };

    PermutationCiResult res;
    res.lo = std::numeric_limits<double>::infinity();
    res.hi = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < s; ++a) {
        const double mu0 = grid_value(cis.mu0, a);
        for (int b = 0; b < s; ++b) {
            const double mu1 = grid_value(cis.mu1, b);
            for (int c = 0; c < s; ++c) {
                const double s0 = grid_value(cis.sigma0, c);
                for (int d = 0; d < s; ++d) {
                    const double s1 = grid_value(cis.sigma1, d);
                    for (int e = 0; e < s; ++e) {
                        const GevModel m = make_model(mu0, mu1, s0, s1, grid_value(cis.xi, e));
                        if (!feasible(m)) {
                            ++res.n_skipped;
                            continue;
                        }
                        const double v = target(m);
                        if (!std::isfinite(v)) {
                            ++res.n_skipped;
                            continue;
                        }
                        ++res.n_evaluated;
                        res.lo = std::min(res.lo, v);
                        res.hi = std::max(res.hi, v);
                    }
                }
            }
        }
    }
    if (res.n_evaluated == 0)
        fail(Errc::infeasible_grid, "every parameter combination was infeasible");

    const GevModel center =
        make_model(0.5 * (cis.mu0.lo + cis.mu0.hi), 0.5 * (cis.mu1.lo + cis.mu1.hi),
                   0.5 * (cis.sigma0.lo + cis.sigma0.hi), 0.5 * (cis.sigma1.lo + cis.sigma1.hi),
                   0.5 * (cis.xi.lo + cis.xi.hi));
    if (feasible(center)) {
        res.point = target(center);
        if (std::isfinite(res.point)) {
            res.lo = std::min(res.lo, res.point);
            res.hi = std::max(res.hi, res.point);
        }
    } else {
        res.point = 0.5 * (res.lo + res.hi);
    }
    return res;
}

const char* compare_method_name(CompareMethod m) {
    switch (m) {
        case CompareMethod::full_proposed: return "full_proposed";
        case CompareMethod::fixed_shape_mle: return "fixed_shape_mle";
        case CompareMethod::plain_mle: return "plain_mle";
    }
    return "unknown";
}

namespace {

MethodCell cell_from_model(const GevModel& model, double anchor_t) {
    MethodCell cell;
    const EvaluatedParams p = evaluate_params(model, anchor_t);
    cell.ok = true;
    cell.mu_anchor = p.mu;
    cell.sigma_anchor = p.sigma;
    cell.xi = p.xi;
    return cell;
}

void attach_curve(MethodCell& cell, const BlockMaxSeries& maxima, const GevModel& model) {
    if (!cell.ok || maxima.size() == 0) return;
    try {
        std::vector<double> z = gumbel_normalize(maxima, model);
        std::sort(z.begin(), z.end());
        const double n = static_cast<double>(z.size());
        cell.normalized_curve.reserve(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double p = (static_cast<double>(i) + 0.5) / n;
            cell.normalized_curve.emplace_back(1.0 / (1.0 - p), z[i]);
        }
    } catch (const Error& e) {
        cell.note = std::string("normalization failed: ") + e.what();
    }
}

void fill_errors(MethodCell& cell, const MethodCell& ref) {
    if (!cell.ok || !ref.ok) return;
    cell.err_mu = std::fabs(cell.mu_anchor - ref.mu_anchor);
    cell.err_sigma = std::fabs(cell.sigma_anchor - ref.sigma_anchor);
    cell.err_xi = std::fabs(cell.xi - ref.xi);
}

}  // namespace

MethodComparison compare_methods(const TimeSeries& short_run, const TimeSeries& long_run,
                                 const std::vector<int>& k_list, const CompareConfig& config) {
    if (k_list.empty()) fail(Errc::invalid_comparison, "k_list must not be empty");
    for (int k : k_list)
        if (k < 1) fail(Errc::invalid_window, "window sizes must be >= 1");

    // The configured k_max is the derivation horizon for the scaling fit
    // (as in the full workflow); the sweep itself must extend to the deepest
    // requested window so methods (2) and (3) can attempt direct fits there.
    const int derivation_horizon = config.sweep.k_max;
    SweepConfig sweep_cfg = config.sweep;
    sweep_cfg.k_max = std::max(sweep_cfg.k_max, *std::max_element(k_list.begin(), k_list.end()));

    const SweepResult long_sweep = run_successive_sweep(long_run, sweep_cfg);
    const SweepResult short_sweep = run_successive_sweep(short_run, sweep_cfg);

    MethodComparison cmp;
    cmp.k_list = k_list;
    cmp.anchor_t = config.anchor_t;
    cmp.k_f_short = std::min(short_sweep.k_f, derivation_horizon);

    // Scaling law for method (1) on the short run, derived from usable
    // windows inside the derivation horizon.
    ScalingInputs inputs;
    inputs.xi_1 = short_sweep.scaling_inputs.xi_1;
    inputs.mu_10 = short_sweep.scaling_inputs.mu_10;
    inputs.sigma_10 = short_sweep.scaling_inputs.sigma_10;
    inputs.theta_1 = short_sweep.scaling_inputs.theta_1;
    for (std::size_t i = 0; i < short_sweep.scaling_inputs.k.size(); ++i) {
        if (short_sweep.scaling_inputs.k[i] > derivation_horizon) continue;
        inputs.k.push_back(short_sweep.scaling_inputs.k[i]);
        inputs.mu_k0.push_back(short_sweep.scaling_inputs.mu_k0[i]);
        inputs.sigma_k0.push_back(short_sweep.scaling_inputs.sigma_k0[i]);
        inputs.theta_k.push_back(short_sweep.scaling_inputs.theta_k[i]);
    }
    double theta_1 = 1.0;
    if (!inputs.k.empty()) {
        theta_1 = inputs.theta_1;
        ScalingFitOptions fit_opts;
        fit_opts.theta_adjusted = !config.gtk_paper_literal;
        if (config.gtk_weighted) {
            std::vector<double> w;
            bool ok = true;
            for (std::size_t i = 0; i < inputs.k.size() && ok; ++i) {
                const KFitRow& row =
                    short_sweep.rows[static_cast<std::size_t>(inputs.k[i] - 1)];
                if (!row.fixed_fit || !row.fixed_fit->se_available) {
                    ok = false;
                    break;
                }
                const double level = inputs.mu_k0[i];
                const double se0 = row.fixed_fit->standard_errors[0];
                const double se_log =
                    row.fixed_fit->model.location.form == ParamForm::exponential ? se0
                                                                                 : se0 / level;
                if (!(se_log > 0.0)) {
                    ok = false;
                    break;
                }
                w.push_back(1.0 / (se_log * se_log));
            }
            if (ok) fit_opts.weights = std::move(w);
        }
        try {
            if (config.gtk_form == "auto") {
                cmp.law = select_form(inputs, fit_opts).best;
            } else {
                cmp.law = fit_scaling(inputs, scaling_form_from_name(config.gtk_form),
                                      config.poly_degree, fit_opts);
            }
            cmp.law_ok = true;
        } catch (const Error&) {
            cmp.law_ok = false;
        }
    }

    auto row_of = [](const SweepResult& sweep, int k) -> const KFitRow& {
        return sweep.rows[static_cast<std::size_t>(k - 1)];
    };

    for (int k : k_list) {
        const KFitRow& ref_row = row_of(long_sweep, k);
        MethodCell ref_cell;
        const std::optional<FitResult>& ref_fit =
            config.reference_free_shape ? ref_row.free_fit : ref_row.fixed_fit;
        if (ref_fit && ref_fit->converged) {
            try {
                ref_cell = cell_from_model(ref_fit->model, config.anchor_t);
            } catch (const Error& e) {
                ref_cell.note = e.what();
            }
        } else {
            ref_cell.note = ref_row.note.empty() ? "reference fit unavailable" : ref_row.note;
        }
        cmp.reference.push_back(ref_cell);

        const KFitRow& short_row = row_of(short_sweep, k);

        // Method (3): plain MLE.
        MethodCell m3;
        if (short_row.free_fit && short_row.free_fit->converged) {
            try {
                m3 = cell_from_model(short_row.free_fit->model, config.anchor_t);
                attach_curve(m3, short_row.maxima, short_row.free_fit->model);
            } catch (const Error& e) {
                m3.note = e.what();
            }
        } else {
            m3.note = short_row.free_fit ? "free-shape fit did not converge"
                                         : (short_row.note.empty() ? "free-shape fit unavailable"
                                                                   : short_row.note);
        }

        // Method (2): fixed-shape MLE at every window.
        MethodCell m2;
        if (short_row.fixed_fit && short_row.fixed_fit->converged) {
            try {
                m2 = cell_from_model(short_row.fixed_fit->model, config.anchor_t);
                attach_curve(m2, short_row.maxima, short_row.fixed_fit->model);
            } catch (const Error& e) {
                m2.note = e.what();
            }
        } else {
            m2.note = short_row.fixed_fit ? "fixed-shape fit did not converge"
                                          : (short_row.note.empty()
                                                 ? "fixed-shape fit unavailable"
                                                 : short_row.note);
        }

        // Method (1): fixed-shape fits inside the estimation horizon, scaling
        // inference beyond it.
        MethodCell m1;
        if (k <= cmp.k_f_short && short_row.fixed_fit && short_row.fixed_fit->converged) {
            try {
                m1 = cell_from_model(short_row.fixed_fit->model, config.anchor_t);
                attach_curve(m1, short_row.maxima, short_row.fixed_fit->model);
            } catch (const Error& e) {
                m1.note = e.what();
            }
        } else if (cmp.law_ok) {
            try {
                const double theta_k =
                    extrapolate_theta(short_sweep.thetas, k, config.theta_extrapolation);
                const GevModel inferred = build_inferred_model(
                    short_sweep.base_fit.model, short_sweep.xi1, cmp.law, k, theta_k, theta_1);
                m1 = cell_from_model(inferred, config.anchor_t);
                attach_curve(m1, short_row.maxima, inferred);
            } catch (const Error& e) {
                m1.note = e.what();
            }
        } else {
            m1.note = "scaling law unavailable";
        }

        fill_errors(m1, ref_cell);
        fill_errors(m2, ref_cell);
        fill_errors(m3, ref_cell);
        cmp.methods[0].push_back(std::move(m1));
        cmp.methods[1].push_back(std::move(m2));
        cmp.methods[2].push_back(std::move(m3));
    }
    return cmp;
}

}  // namespace sevt
