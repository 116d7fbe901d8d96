#include "sevt/workflow.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "sevt/csv.hpp"
#include "sevt/error.hpp"
#include "sevt/svg.hpp"

namespace sevt {

namespace {

constexpr double kHalfWidthZ = 1.96;

struct SeView {
    double mu0 = 0, mu1 = 0, sigma0 = 0, sigma1 = 0, xi = 0;
};

// standard_errors layout: location coefficients, scale coefficients, shape.
SeView se_view(const FitResult& fit) {
    SeView v;
    if (!fit.se_available) return v;
    std::size_t i = 0;
    v.mu0 = fit.standard_errors[i++];
    if (fit.model.location.coef_count() == 2) v.mu1 = fit.standard_errors[i++];
    v.sigma0 = fit.standard_errors[i++];
    if (fit.model.scale.coef_count() == 2) v.sigma1 = fit.standard_errors[i++];
    v.xi = fit.standard_errors[i++];
    return v;
}

ParamsRow row_from_fit(int k, const FitResult& fit) {
    ParamsRow row;
    row.k = k;
    row.model = fit.model;
    row.mu0 = fit.model.location.c0;
    row.mu1 = fit.model.location.c1;
    row.sigma0 = fit.model.scale.c0;
    row.sigma1 = fit.model.scale.c1;
    row.xi = fit.model.shape;
    row.source = "fitted";
    if (fit.se_available) {
        const SeView se = se_view(fit);
        row.hw_mu0 = kHalfWidthZ * se.mu0;
        row.hw_mu1 = kHalfWidthZ * se.mu1;
        row.hw_sigma0 = kHalfWidthZ * se.sigma0;
        row.hw_sigma1 = kHalfWidthZ * se.sigma1;
        row.hw_xi = kHalfWidthZ * se.xi;
        row.hw_available = true;
    }
    return row;
}

// Relative half-widths of the base coefficients combined in quadrature with
// the scaling-law uncertainty; log-space coefficients combine additively.
void inferred_half_widths(ParamsRow& row, const ParamsRow& base, double g, double g_lo,
                          double g_hi) {
    if (!base.hw_available || !(g > 0.0)) {
        row.hw_available = false;
        return;
    }
    const double rel_g = std::max(g_hi - g, g - g_lo) / g;
    const double log_hw = std::sqrt(rel_g * rel_g);  // half-width of log g
    auto mult = [&](double value, double base_value, double base_hw) {
        const double rel_base = base_value != 0.0 ? std::fabs(base_hw / base_value) : 0.0;
        return std::fabs(value) * std::sqrt(rel_base * rel_base + rel_g * rel_g);
    };
    auto log_space = [&](double base_hw) {
        return std::sqrt(base_hw * base_hw + log_hw * log_hw);
    };
    const bool loc_log = row.model.location.form == ParamForm::exponential;
    const bool scale_log = row.model.scale.form == ParamForm::exponential;
    row.hw_mu0 = loc_log ? log_space(base.hw_mu0) : mult(row.mu0, base.mu0, base.hw_mu0);
    row.hw_mu1 = loc_log ? base.hw_mu1 : mult(row.mu1, base.mu1, base.hw_mu1);
    row.hw_sigma0 =
        scale_log ? log_space(base.hw_sigma0) : mult(row.sigma0, base.sigma0, base.hw_sigma0);
    row.hw_sigma1 = scale_log ? base.hw_sigma1 : mult(row.sigma1, base.sigma1, base.hw_sigma1);
    row.hw_xi = base.hw_xi;
    row.hw_available = true;
}

ParamCis cis_from_row(const ParamsRow& row) {
    auto ci = [](double v, double hw) { return ParamCi{v - hw, v + hw}; };
    ParamCis cis;
    cis.mu0 = ci(row.mu0, row.hw_mu0);
    cis.mu1 = ci(row.mu1, row.hw_mu1);
    cis.sigma0 = ci(row.sigma0, row.hw_sigma0);
    cis.sigma1 = ci(row.sigma1, row.hw_sigma1);
    cis.xi = ci(row.xi, row.hw_xi);
    return cis;
}

bool zero_width(const ParamsRow& row) {
    return !row.hw_available || (row.hw_mu0 == 0 && row.hw_mu1 == 0 && row.hw_sigma0 == 0 &&
                                 row.hw_sigma1 == 0 && row.hw_xi == 0);
}

}  // namespace

WorkflowResult run_workflow(const WorkflowConfig& config, const TimeSeries& input) {
    WorkflowResult res;
    res.config = config;

    TimeSeries series = input;
    series.validate();
    if (config.drop_zero_values) {
        series = drop_zeros(series);
        res.notices.push_back("zero-valued observations removed (" +
                              std::to_string(input.size() - series.size()) + " rows)");
    }

    // Step A1: dependence diagnostic for the block-length choice.
    res.acf = autocorrelation(series, std::min<std::size_t>(50, series.size() - 1));

    // Step A2: nonstationary fit on block maxima plus LR test vs stationary.
    BlockMaxSeries bm1 = block_maxima(series, config.sweep.block_length);
    const double t_offset = bm1.block_covariates.front();
    for (double& t : bm1.block_covariates) t -= t_offset;

    const FitResult base =
        fit_mle(bm1, config.sweep.location_form, config.sweep.scale_form);
    res.stationary_fit = fit_mle(bm1, ParamForm::constant, ParamForm::constant);
    if (config.sweep.location_form == ParamForm::constant &&
        config.sweep.scale_form == ParamForm::constant) {
        res.lr_p = 1.0;
        res.notices.push_back("configured model is stationary; LR test degenerate");
    } else {
        try {
            res.lr_p = likelihood_ratio_test(res.stationary_fit, base);
        } catch (const Error& e) {
            res.lr_p = 1.0;
            res.notices.push_back(std::string("LR test failed: ") + e.what());
        }
    }

    // Step A3: Frechet gate on the k=1 shape.
    {
        const double xi1 = base.model.shape;
        const SeView se = se_view(base);
        const double lower = base.se_available ? xi1 - config.frechet_z * se.xi : xi1;
        if (!(xi1 > 0.0) || !(lower > 0.0)) {
            fail(Errc::workflow_precondition,
                 "workflow step A3: extremes are not of Frechet type (xi_1=" +
                     detail::format_double(xi1) + ", one-sided 95% lower bound " +
                     detail::format_double(lower) + " <= 0)");
        }
    }

    // Steps B1-B4 across window sizes.
    res.sweep = run_successive_sweep(series, config.sweep);
    for (const std::string& n : res.sweep.notices) res.notices.push_back(n);

    // Step B5: scaling-law estimation on the usable windows.
    const ScalingInputs& inputs = res.sweep.scaling_inputs;
    if (inputs.k.size() >= 3) {
        ScalingFitOptions opts;
        opts.theta_adjusted = !config.gtk_paper_literal;
        if (config.gtk_weighted) {
            std::vector<double> w;
            bool ok = true;
            for (std::size_t i = 0; i < inputs.k.size() && ok; ++i) {
                const KFitRow& row = res.sweep.rows[static_cast<std::size_t>(inputs.k[i] - 1)];
                if (!row.fixed_fit->se_available) {
                    ok = false;
                    break;
                }
                const SeView se = se_view(*row.fixed_fit);
                // Weight on the log-response scale.
                const double level = inputs.mu_k0[i];
                const double se_log =
                    row.fixed_fit->model.location.form == ParamForm::exponential
                        ? se.mu0
                        : se.mu0 / level;
                if (!(se_log > 0.0)) {
                    ok = false;
                    break;
                }
                w.push_back(1.0 / (se_log * se_log));
            }
            if (ok) {
                opts.weights = std::move(w);
            } else {
                res.notices.push_back(
                    "inverse-variance weights unavailable; using unweighted regression");
            }
        }
        try {
            if (config.gtk_form == "auto") {
                res.gtk = select_form(inputs, opts);
            } else {
                res.gtk.best = fit_scaling(inputs, scaling_form_from_name(config.gtk_form),
                                           config.poly_degree, opts);
                res.gtk.candidates.push_back(res.gtk.best);
            }
            res.law_ok = true;
        } catch (const Error& e) {
            res.notices.push_back(std::string("scaling fit failed: ") + e.what());
        }
    } else {
        res.notices.push_back("fewer than 3 usable windows; scaling fit skipped");
    }

    // Part C: parameter table across window sizes, fitted inside the
    // estimation horizon and inferred beyond it.
    ParamsRow base_row = row_from_fit(1, res.sweep.base_fit);
    const int k_cap = config.k_cap > 0 ? config.k_cap : 2 * std::max(res.sweep.k_f, 1);
    for (int k = 1; k <= config.k_infer_max; ++k) {
        const KFitRow* row =
            k <= static_cast<int>(res.sweep.rows.size())
                ? &res.sweep.rows[static_cast<std::size_t>(k - 1)]
                : nullptr;
        const bool use_fit =
            k <= res.sweep.k_f && row && row->fixed_fit && row->fixed_fit->converged;
        if (use_fit) {
            ParamsRow pr = row_from_fit(k, *row->fixed_fit);
            if (k > 1) {
                // The shape interval is inherited from the k=1 fit where the
                // shape was actually estimated.
                pr.hw_xi = base_row.hw_xi;
            }
            res.params.push_back(std::move(pr));
            continue;
        }
        if (!res.law_ok) {
            res.notices.push_back("k=" + std::to_string(k) +
                                  ": no fit and no scaling law; row omitted");
            continue;
        }
        try {
            const double theta_k =
                extrapolate_theta(res.sweep.thetas, k, config.theta_extrapolation);
            const GevModel model =
                build_inferred_model(res.sweep.base_fit.model, res.sweep.xi1, res.gtk.best, k,
                                     theta_k, inputs.theta_1);
            ParamsRow pr;
            pr.k = k;
            pr.model = model;
            pr.mu0 = model.location.c0;
            pr.mu1 = model.location.c1;
            pr.sigma0 = model.scale.c0;
            pr.sigma1 = model.scale.c1;
            pr.xi = model.shape;
            pr.source = "inferred";
            pr.beyond_horizon = k > k_cap;
            const double g = res.gtk.best.evaluate(k);
            const auto [g_lo, g_hi] = res.gtk.best.interval(k, kHalfWidthZ);
            inferred_half_widths(pr, base_row, g, g_lo, g_hi);
            res.params.push_back(std::move(pr));
        } catch (const Error& e) {
            res.notices.push_back("k=" + std::to_string(k) + ": inference failed: " + e.what());
        }
    }

    // Horizon conversion: blocks per covariate unit from the block length and
    // the sampling density of the data actually used.
    const std::size_t used = bm1.size() * config.sweep.block_length;
    const double span_used = series.covariates[used - 1] - series.covariates[0];
    if (span_used > 0.0) {
        res.blocks_per_unit = static_cast<double>(bm1.size()) / span_used;
    } else {
        res.notices.push_back(
            "covariate span is zero; return-level horizons unavailable");
    }

    const double t_data_max = series.covariates.back() - t_offset;
    double horizon_end = config.horizon_start;
    for (double h : config.horizons) horizon_end = std::max(horizon_end, config.horizon_start + h);
    const std::pair<double, double> feasibility{std::min(0.0, config.horizon_start),
                                                std::max(t_data_max, horizon_end)};

    if (res.blocks_per_unit > 0.0) {
        res.returns.method_tag = "full_proposed";
        res.returns.anchor_t = config.anchor_t;
        for (const ParamsRow& pr : res.params) {
            for (double h : config.horizons) {
                const std::pair<double, double> range{config.horizon_start,
                                                      config.horizon_start + h};
                ReturnLevelRow rl;
                rl.k = pr.k;
                rl.horizon_span = h;
                rl.horizon_events = h * res.blocks_per_unit;
                try {
                    rl.level = horizon_return_level(pr.model, range, res.blocks_per_unit);
                } catch (const Error& e) {
                    res.notices.push_back("return level k=" + std::to_string(pr.k) +
                                          " horizon=" + detail::format_double(h) +
                                          " failed: " + e.what());
                    continue;
                }
                rl.level_total = static_cast<double>(pr.k) * rl.level;
                if (zero_width(pr)) {
                    rl.ci_low = rl.ci_high = rl.level;
                } else {
                    auto target = [&](const GevModel& m) {
                        try {
                            return horizon_return_level(m, range, res.blocks_per_unit);
                        } catch (const Error&) {
                            return std::numeric_limits<double>::quiet_NaN();
                        }
                    };
                    try {
                        const PermutationCiResult ci = permutation_ci(
                            cis_from_row(pr), config.samples_per_param,
                            pr.model.location.form, pr.model.scale.form, feasibility, target);
                        rl.ci_low = ci.lo;
                        rl.ci_high = ci.hi;
                    } catch (const Error& e) {
                        rl.ci_low = rl.ci_high = rl.level;
                        res.notices.push_back("permutation CI failed at k=" +
                                              std::to_string(pr.k) + ": " + e.what());
                    }
                }
                res.returns.rows.push_back(rl);
            }
        }
    }

    // Quantile fan over the configured years.
    for (int k : config.fan_k) {
        const ParamsRow* pr = nullptr;
        for (const ParamsRow& candidate : res.params)
            if (candidate.k == k) pr = &candidate;
        if (!pr) {
            res.notices.push_back("fan window k=" + std::to_string(k) + " unavailable");
            continue;
        }
        for (int year = 1; year <= static_cast<int>(config.fan_years); ++year) {
            const double t = static_cast<double>(year);
            for (double prob : config.quantile_probs) {
                QuantileFanRow fr;
                fr.k = k;
                fr.t = t;
                fr.prob = prob;
                try {
                    const EvaluatedParams p = evaluate_params(pr->model, t);
                    fr.level = gev_quantile(prob, p.xi, p.mu, p.sigma);
                } catch (const Error& e) {
                    res.notices.push_back("quantile fan failed at k=" + std::to_string(k) +
                                          ", t=" + detail::format_double(t) + ": " + e.what());
                    continue;
                }
                if (zero_width(*pr)) {
                    fr.ci_low = fr.ci_high = fr.level;
                } else {
                    auto target = [&](const GevModel& m) {
                        const double sigma = m.scale(t);
                        if (!(sigma > 0.0)) return std::numeric_limits<double>::quiet_NaN();
                        return gev_quantile(prob, m.shape, m.location(t), sigma);
                    };
                    try {
                        const PermutationCiResult ci = permutation_ci(
                            cis_from_row(*pr), config.samples_per_param,
                            pr->model.location.form, pr->model.scale.form, feasibility, target);
                        fr.ci_low = ci.lo;
                        fr.ci_high = ci.hi;
                    } catch (const Error&) {
                        fr.ci_low = fr.ci_high = fr.level;
                    }
                }
                res.fan.push_back(fr);
            }
        }
    }
    return res;
}

namespace {

using detail::format_double;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf"};

void add_file(std::vector<std::string>& files, std::string path) {
    files.push_back(std::move(path));
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

std::vector<std::string> emit_outputs(const WorkflowResult& bundle, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "figures", ec);
    fs::create_directories(fs::path(out_dir) / "plotdata", ec);
    if (ec) fail(Errc::io_error, "cannot create output directory '" + out_dir + "'");

    std::vector<std::string> files;
    std::vector<std::string> omitted;

    // params.csv: Table-2 column structure plus half-widths and provenance.
    if (!bundle.params.empty()) {
        std::string csv =
            "k,mu_k0,mu_k1,sigma_k0,sigma_k1,xi_k,"
            "mu_k0_hw,mu_k1_hw,sigma_k0_hw,sigma_k1_hw,xi_k_hw,source\n";
        for (const ParamsRow& r : bundle.params) {
            csv += std::to_string(r.k) + ',' + format_double(r.mu0) + ',' +
                   format_double(r.mu1) + ',' + format_double(r.sigma0) + ',' +
                   format_double(r.sigma1) + ',' + format_double(r.xi) + ',';
            if (r.hw_available) {
                csv += format_double(r.hw_mu0) + ',' + format_double(r.hw_mu1) + ',' +
                       format_double(r.hw_sigma0) + ',' + format_double(r.hw_sigma1) + ',' +
                       format_double(r.hw_xi);
            } else {
                csv += ",,,,";
            }
            csv += ',' + r.source + (r.beyond_horizon ? "(beyond-horizon)" : "") + '\n';
        }
        const std::string path = join_path(out_dir, "params.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);
    } else {
        omitted.push_back("params.csv (no parameter rows)");
    }

    // theta.csv: Table-3 structure.
    if (!bundle.sweep.thetas.estimates.empty()) {
        std::string csv = "k,theta,n_exceedances,clamped,clustering_saturated\n";
        for (const ThetaEstimate& e : bundle.sweep.thetas.estimates) {
            csv += std::to_string(e.k) + ',' + format_double(e.theta) + ',' +
                   std::to_string(e.n_exceedances) + ',' + (e.clamped ? "1" : "0") + ',' +
                   (e.clustering_saturated ? "1" : "0") + '\n';
        }
        const std::string path = join_path(out_dir, "theta.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);
    } else {
        omitted.push_back("theta.csv (no extremal-index estimates)");
    }

    // gtk.csv: long key,value format.
    if (bundle.law_ok) {
        const ScalingLaw& law = bundle.gtk.best;
        std::string csv = "key,value\n";
        csv += std::string("form,") + scaling_form_name(law.form) + '\n';
        if (law.form == ScalingForm::exponential) {
            csv += "a," + format_double(law.coefficients[0]) + '\n';
            csv += "b," + format_double(law.coefficients[1]) + '\n';
        } else if (law.form == ScalingForm::power) {
            csv += "a," + format_double(law.coefficients[0]) + '\n';
            csv += "beta," + format_double(law.coefficients[1]) + '\n';
        } else {
            csv += "degree," + std::to_string(law.poly_degree) + '\n';
            for (std::size_t i = 0; i < law.coefficients.size(); ++i)
                csv += "c" + std::to_string(i) + ',' + format_double(law.coefficients[i]) + '\n';
        }
        csv += "r2," + format_double(law.fit_r2) + '\n';
        csv += "adj_r2," + format_double(law.adj_r2) + '\n';
        csv += "transformed_r2," + format_double(law.transformed_r2) + '\n';
        std::string ks;
        for (int k : law.k_fit_range) ks += (ks.empty() ? "" : ";") + std::to_string(k);
        csv += "k_fit," + ks + '\n';
        csv += "k_f," + std::to_string(bundle.sweep.k_f) + '\n';
        const std::string path = join_path(out_dir, "gtk.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);
    } else {
        omitted.push_back("gtk.csv (scaling law unavailable)");
    }

    // returns.csv.
    if (!bundle.returns.rows.empty()) {
        std::string csv =
            "k,horizon,horizon_events,level,level_total,ci_low,ci_high,ci_low_total,"
            "ci_high_total\n";
        for (const ReturnLevelRow& r : bundle.returns.rows) {
            const double dk = static_cast<double>(r.k);
            csv += std::to_string(r.k) + ',' + format_double(r.horizon_span) + ',' +
                   format_double(r.horizon_events) + ',' + format_double(r.level) + ',' +
                   format_double(r.level_total) + ',' + format_double(r.ci_low) + ',' +
                   format_double(r.ci_high) + ',' + format_double(dk * r.ci_low) + ',' +
                   format_double(dk * r.ci_high) + '\n';
        }
        const std::string path = join_path(out_dir, "returns.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);
    } else {
        omitted.push_back("returns.csv (no return levels computed)");
    }

    // gof.csv: Table-5 structure.
    {
        std::string csv = "k,n,ks_stat,ks_p,ad_stat,ad_p,normalized\n";
        std::size_t rows = 0;
        for (const KFitRow& r : bundle.sweep.rows) {
            if (!r.gof) continue;
            ++rows;
            csv += std::to_string(r.k) + ',' + std::to_string(r.gof->n) + ',' +
                   format_double(r.gof->ks_statistic) + ',' + format_double(r.gof->ks_p) + ',' +
                   format_double(r.gof->ad_statistic) + ',' + format_double(r.gof->ad_p) + ',' +
                   (r.gof->normalized ? "1" : "0") + '\n';
        }
        if (rows > 0) {
            const std::string path = join_path(out_dir, "gof.csv");
            detail::write_text_file(path, csv);
            add_file(files, path);
        } else {
            omitted.push_back("gof.csv (no goodness-of-fit reports)");
        }
    }

    // Scaling derivation/validation figure and plot data.
    if (bundle.law_ok && !bundle.sweep.scaling_inputs.k.empty()) {
        const ScalingInputs& in = bundle.sweep.scaling_inputs;
        const ScalingLaw& law = bundle.gtk.best;

        svg::Series observed;
        observed.label = "fitted mu_k0";
        observed.style = svg::Style::points;
        observed.color = kPalette[0];
        for (std::size_t i = 0; i < in.k.size(); ++i)
            observed.points.emplace_back(in.k[i], in.mu_k0[i]);

        svg::Series predicted;
        predicted.label = "g(k) prediction";
        predicted.style = svg::Style::line;
        predicted.color = kPalette[1];
        std::string deriv_csv = "k,observed_mu_k0,predicted_mu_k0,predicted_lo,predicted_hi\n";
        svg::Series band_lo = predicted, band_hi = predicted;
        band_lo.label = "95% CI";
        band_lo.dashed = band_hi.dashed = true;
        band_hi.label.clear();
        const int k_deep = std::max(bundle.config.k_infer_max, bundle.sweep.k_f);
        for (int k = 1; k <= k_deep; ++k) {
            double theta_k;
            try {
                theta_k = extrapolate_theta(bundle.sweep.thetas, k,
                                            bundle.config.theta_extrapolation);
            } catch (const Error&) {
                break;
            }
            const double ratio = std::pow(theta_k / in.theta_1, in.xi_1);
            const double pred = law.evaluate(k) * in.mu_10 * ratio;
            const auto [g_lo, g_hi] = law.interval(k, kHalfWidthZ);
            predicted.points.emplace_back(k, pred);
            band_lo.points.emplace_back(k, g_lo * in.mu_10 * ratio);
            band_hi.points.emplace_back(k, g_hi * in.mu_10 * ratio);
            double obs = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t i = 0; i < in.k.size(); ++i)
                if (in.k[i] == k) obs = in.mu_k0[i];
            deriv_csv += std::to_string(k) + ',' +
                         (std::isnan(obs) ? "" : format_double(obs)) + ',' +
                         format_double(pred) + ',' + format_double(g_lo * in.mu_10 * ratio) +
                         ',' + format_double(g_hi * in.mu_10 * ratio) + '\n';
        }
        svg::Chart deriv;
        deriv.title = "Scaling-law derivation on location levels";
        deriv.x_label = "window size k";
        deriv.y_label = "location level at t=0";
        deriv.series = {predicted, band_lo, band_hi, observed};
        std::string path = join_path(out_dir, "figures/gtk_derivation.svg");
        detail::write_text_file(path, deriv.render());
        add_file(files, path);
        path = join_path(out_dir, "plotdata/gtk_derivation.csv");
        detail::write_text_file(path, deriv_csv);
        add_file(files, path);

        // Validation on the scale intercepts.
        svg::Series s_obs;
        s_obs.label = "fitted sigma_k0";
        s_obs.style = svg::Style::points;
        s_obs.color = kPalette[0];
        svg::Series s_pred;
        s_pred.label = "g(k) prediction";
        s_pred.color = kPalette[1];
        std::string valid_csv = "k,observed_sigma_k0,predicted_sigma_k0\n";
        const ScaleLink link = bundle.sweep.scale_link;
        for (std::size_t i = 0; i < in.k.size(); ++i) {
            const InferredParams ip =
                infer_params(law, in.k[i], in, in.theta_k[i], link);
            s_obs.points.emplace_back(in.k[i], in.sigma_k0[i]);
            s_pred.points.emplace_back(in.k[i], ip.sigma_k0);
            valid_csv += std::to_string(in.k[i]) + ',' + format_double(in.sigma_k0[i]) + ',' +
                         format_double(ip.sigma_k0) + '\n';
        }
        svg::Chart valid;
        valid.title = "Scaling-law validation on scale intercepts";
        valid.x_label = "window size k";
        valid.y_label = "scale intercept at t=0";
        valid.series = {s_pred, s_obs};
        path = join_path(out_dir, "figures/gtk_validation.svg");
        detail::write_text_file(path, valid.render());
        add_file(files, path);
        path = join_path(out_dir, "plotdata/gtk_validation.csv");
        detail::write_text_file(path, valid_csv);
        add_file(files, path);
    } else {
        omitted.push_back("figures/gtk_*.svg (scaling law unavailable)");
    }

    // Shape-deviation diagnostic.
    {
        svg::Series free_shape;
        free_shape.label = "free-shape estimate";
        free_shape.style = svg::Style::line_points;
        free_shape.color = kPalette[0];
        std::string csv = "k,xi_free,xi_fixed,xi1_lo,xi1_hi\n";
        const double xi1 = bundle.sweep.xi1;
        const double hw = bundle.sweep.xi1_se_available
                              ? kHalfWidthZ * bundle.sweep.xi1_se
                              : 0.0;
        for (const KFitRow& r : bundle.sweep.rows) {
            if (!r.free_fit) continue;
            free_shape.points.emplace_back(r.k, r.free_fit->model.shape);
            csv += std::to_string(r.k) + ',' + format_double(r.free_fit->model.shape) + ',' +
                   format_double(xi1) + ',' + format_double(xi1 - hw) + ',' +
                   format_double(xi1 + hw) + '\n';
        }
        if (!free_shape.points.empty()) {
            const double k_lo = free_shape.points.front().first;
            const double k_hi = free_shape.points.back().first;
            svg::Series fixed;
            fixed.points = {{k_lo, xi1}, {k_hi, xi1}};
            fixed.label = "fixed shape (k=1)";
            fixed.color = kPalette[1];
            svg::Series lo;
            lo.points = {{k_lo, xi1 - hw}, {k_hi, xi1 - hw}};
            lo.label = "95% CI of xi_1";
            lo.color = kPalette[1];
            lo.dashed = true;
            svg::Series hi;
            hi.points = {{k_lo, xi1 + hw}, {k_hi, xi1 + hw}};
            hi.color = kPalette[1];
            hi.dashed = true;
            svg::Chart chart;
            chart.title = "Shape estimates across window size";
            chart.x_label = "window size k";
            chart.y_label = "shape";
            chart.series = {fixed, lo, hi, free_shape};
            std::string path = join_path(out_dir, "figures/shape_deviation.svg");
            detail::write_text_file(path, chart.render());
            add_file(files, path);
            path = join_path(out_dir, "plotdata/shape_deviation.csv");
            detail::write_text_file(path, csv);
            add_file(files, path);
        } else {
            omitted.push_back("figures/shape_deviation.svg (no free-shape fits)");
        }
    }

    // Return-level curves per horizon.
    if (!bundle.returns.rows.empty()) {
        svg::Chart chart;
        chart.title = "Return levels by window size";
        chart.x_label = "window size k";
        chart.y_label = "level (per event)";
        std::string csv = "k,horizon,level,ci_low,ci_high\n";
        std::size_t color = 0;
        for (double h : bundle.config.horizons) {
            svg::Series s;
            s.label = "horizon " + format_double(h);
            s.color = kPalette[color++ % 7];
            s.style = svg::Style::line_points;
            for (const ReturnLevelRow& r : bundle.returns.rows) {
                if (r.horizon_span != h) continue;
                s.points.emplace_back(r.k, r.level);
                s.err_low.push_back(r.ci_low);
                s.err_high.push_back(r.ci_high);
                csv += std::to_string(r.k) + ',' + format_double(h) + ',' +
                       format_double(r.level) + ',' + format_double(r.ci_low) + ',' +
                       format_double(r.ci_high) + '\n';
            }
            if (!s.points.empty()) chart.series.push_back(std::move(s));
        }
        std::string path = join_path(out_dir, "figures/return_levels.svg");
        detail::write_text_file(path, chart.render());
        add_file(files, path);
        path = join_path(out_dir, "plotdata/return_levels.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);
    }

    // Quantile fan per configured window size.
    if (!bundle.fan.empty()) {
        std::string csv = "k,t,prob,level,ci_low,ci_high\n";
        for (const QuantileFanRow& r : bundle.fan) {
            csv += std::to_string(r.k) + ',' + format_double(r.t) + ',' +
                   format_double(r.prob) + ',' + format_double(r.level) + ',' +
                   format_double(r.ci_low) + ',' + format_double(r.ci_high) + '\n';
        }
        std::string path = join_path(out_dir, "plotdata/quantile_fan.csv");
        detail::write_text_file(path, csv);
        add_file(files, path);

        for (int k : bundle.config.fan_k) {
            svg::Chart chart;
            chart.title = "Quantiles over time, k=" + std::to_string(k);
            chart.x_label = "t (covariate units from data start)";
            chart.y_label = "level";
            std::size_t color = 0;
            for (double prob : bundle.config.quantile_probs) {
                svg::Series s;
                s.label = format_double(100.0 * prob) + "% quantile";
                s.color = kPalette[color++ % 7];
                s.style = svg::Style::line_points;
                for (const QuantileFanRow& r : bundle.fan) {
                    if (r.k != k || r.prob != prob) continue;
                    s.points.emplace_back(r.t, r.level);
                    s.err_low.push_back(r.ci_low);
                    s.err_high.push_back(r.ci_high);
                }
                if (!s.points.empty()) chart.series.push_back(std::move(s));
            }
            if (chart.series.empty()) continue;
            const std::string path =
                join_path(out_dir, "figures/quantile_fan_k" + std::to_string(k) + ".svg");
            detail::write_text_file(path, chart.render());
            add_file(files, path);
        }
    }

    // Manifest with metadata and notices.
    {
        std::string m;
        m += "t_offset=" + format_double(bundle.sweep.t_offset) + '\n';
        m += "blocks_per_unit=" + format_double(bundle.blocks_per_unit) + '\n';
        m += "block_length=" + std::to_string(bundle.config.sweep.block_length) + '\n';
        m += "k_max=" + std::to_string(bundle.config.sweep.k_max) + '\n';
        m += "k_f=" + std::to_string(bundle.sweep.k_f) + '\n';
        m += "xi_1=" + format_double(bundle.sweep.xi1) + '\n';
        m += "lr_p=" + format_double(bundle.lr_p) + '\n';
        m += "seed=" + std::to_string(bundle.config.seed) + '\n';
        m += std::string("scaling_form=") +
             (bundle.law_ok ? scaling_form_name(bundle.gtk.best.form) : "unavailable") + '\n';
        for (const std::string& f : files)
            m += "file " +
                 std::filesystem::path(f).lexically_relative(out_dir).generic_string() + '\n';
        for (const std::string& o : omitted) m += "omitted " + o + '\n';
        for (const std::string& n : bundle.notices) m += "note " + n + '\n';
        const std::string path = join_path(out_dir, "manifest.txt");
        detail::write_text_file(path, m);
        add_file(files, path);
    }
    return files;
}

}  // namespace sevt
