#include "sevt/gev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sevt/error.hpp"
#include "sevt/optim.hpp"
#include "sevt/stats.hpp"

namespace sevt {

namespace {

constexpr double kXiZeroTol = 1e-12;
constexpr double kEulerMascheroni = 0.5772156649015329;
constexpr double kInfeasiblePenalty = 1e10;

void check_scale(double sigma) {
    if (!(sigma > 0.0)) fail(Errc::invalid_scale, "scale parameter must be strictly positive");
}

}  // namespace

double gev_cdf(double z, double xi, double mu, double sigma) {
    check_scale(sigma);
    const double s = (z - mu) / sigma;
    if (std::fabs(xi) < kXiZeroTol) return std::exp(-std::exp(-s));
    const double t = 1.0 + xi * s;
    if (t <= 0.0) return xi > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::exp(-std::log1p(xi * s) / xi));
}

double gev_log_pdf(double z, double xi, double mu, double sigma) {
    check_scale(sigma);
    const double s = (z - mu) / sigma;
    if (std::fabs(xi) < kXiZeroTol) return -std::log(sigma) - s - std::exp(-s);
    const double t = 1.0 + xi * s;
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    const double log_t = std::log1p(xi * s);
    return -std::log(sigma) - (1.0 + 1.0 / xi) * log_t - std::exp(-log_t / xi);
}

double gev_quantile(double p, double xi, double mu, double sigma) {
    check_scale(sigma);
    if (!(p > 0.0 && p < 1.0)) fail(Errc::invalid_probability, "probability must lie in (0,1)");
    const double log_neg_log_p = std::log(-std::log(p));
    if (std::fabs(xi) < kXiZeroTol) return mu - sigma * log_neg_log_p;
    // (-ln p)^(-xi) - 1 written via expm1 so the Gumbel limit is smooth.
    return mu + sigma * std::expm1(-xi * log_neg_log_p) / xi;
}

const char* param_form_name(ParamForm f) {
    switch (f) {
        case ParamForm::constant: return "constant";
        case ParamForm::linear: return "linear";
        case ParamForm::exponential: return "exponential";
    }
    return "unknown";
}

ParamForm param_form_from_name(const std::string& name) {
    if (name == "constant") return ParamForm::constant;
    if (name == "linear") return ParamForm::linear;
    if (name == "exponential") return ParamForm::exponential;
    fail(Errc::config_error, "unknown parameter form '" + name + "'");
}

double ParamModel::operator()(double t) const {
    switch (form) {
        case ParamForm::constant: return c0;
        case ParamForm::linear: return c0 + c1 * t;
        case ParamForm::exponential: return std::exp(c0 + c1 * t);
    }
    return c0;
}

EvaluatedParams evaluate_params(const GevModel& model, double t) {
    const double mu = model.location(t);
    const double sigma = model.scale(t);
    if (!(sigma > 0.0))
        fail(Errc::scale_collapse,
             "scale model evaluates to " + std::to_string(sigma) + " at t=" + std::to_string(t));
    return {mu, sigma, model.shape};
}

double gev_negative_log_likelihood(const GevModel& model, const BlockMaxSeries& maxima) {
    double nll = 0.0;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        const double t = maxima.block_covariates[i];
        const double sigma = model.scale(t);
        if (!(sigma > 0.0)) return std::numeric_limits<double>::infinity();
        const double lp = gev_log_pdf(maxima.maxima[i], model.shape, model.location(t), sigma);
        if (!std::isfinite(lp)) return std::numeric_limits<double>::infinity();
        nll -= lp;
    }
    return nll;
}

namespace detail {

PwmEstimate gev_pwm_estimate(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    const double dn = static_cast<double>(n);
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double di = static_cast<double>(i);
        b0 += sample[i];
        b1 += di / (dn - 1.0) * sample[i];
        if (n > 2) b2 += di * (di - 1.0) / ((dn - 1.0) * (dn - 2.0)) * sample[i];
    }
    b0 /= dn;
    b1 /= dn;
    b2 /= dn;

    PwmEstimate est{0.1, 0.0, 1.0};
    const double denom = 3.0 * b2 - b0;
    const double spread = 2.0 * b1 - b0;
    auto moment_fallback = [&]() {
        const double sd = std::sqrt(std::max(detail::sample_variance(sample), 1e-12));
        const double sigma = sd * std::sqrt(6.0) / M_PI;
        return PwmEstimate{0.1, b0 - kEulerMascheroni * sigma, sigma};
    };
    if (std::fabs(denom) < 1e-12 || spread <= 0.0) return moment_fallback();

    const double c = spread / denom - std::log(2.0) / std::log(3.0);
    double kappa = 7.8590 * c + 2.9554 * c * c;  // Hosking's k = -xi
    kappa = std::clamp(kappa, -0.95, 10.0);
    if (std::fabs(kappa) < 1e-6) {
        const double sigma = spread / std::log(2.0);
        return {0.0, b0 - kEulerMascheroni * sigma, sigma};
    }
    const double gam = std::tgamma(1.0 + kappa);
    const double sigma = spread * kappa / (gam * (1.0 - std::pow(2.0, -kappa)));
    const double mu = b0 + sigma * (gam - 1.0) / kappa;
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) return moment_fallback();
    est = {-kappa, mu, sigma};
    return est;
}

}  // namespace detail

namespace {

// Optimizer coordinates: [xi (if free)] + location coefs + scale coefs.
// Constant scale is carried as log(sigma); other scale forms use their
// natural coefficients (exponential is positive by construction, linear is
// kept feasible by the penalty).
struct CoordCodec {
    ParamForm loc_form;
    ParamForm scale_form;
    bool shape_free;
    double fixed_shape = 0.0;

    std::size_t dim() const {
        return (shape_free ? 1 : 0) + (loc_form == ParamForm::constant ? 1 : 2) +
               (scale_form == ParamForm::constant ? 1 : 2);
    }

    GevModel decode(const std::vector<double>& x) const {
        GevModel m;
        std::size_t i = 0;
        m.shape = shape_free ? x[i++] : fixed_shape;
        m.shape_fixed = !shape_free;
        m.location.form = loc_form;
        m.location.c0 = x[i++];
        m.location.c1 = loc_form == ParamForm::constant ? 0.0 : x[i++];
        m.scale.form = scale_form;
        if (scale_form == ParamForm::constant) {
            m.scale.c0 = std::exp(x[i++]);
            m.scale.c1 = 0.0;
        } else {
            m.scale.c0 = x[i++];
            m.scale.c1 = x[i++];
        }
        return m;
    }

    std::vector<double> encode(const GevModel& m) const {
        std::vector<double> x;
        if (shape_free) x.push_back(m.shape);
        x.push_back(m.location.c0);
        if (loc_form != ParamForm::constant) x.push_back(m.location.c1);
        if (scale_form == ParamForm::constant) {
            x.push_back(std::log(m.scale.c0));
        } else {
            x.push_back(m.scale.c0);
            x.push_back(m.scale.c1);
        }
        return x;
    }
};

// Natural coefficients used for the observed-information matrix: location
// coefs, scale coefs, then shape (only when free).
struct NaturalCodec {
    GevModel base;
    bool shape_free;

    std::size_t dim() const {
        return base.location.coef_count() + base.scale.coef_count() + (shape_free ? 1 : 0);
    }

    GevModel decode(const std::vector<double>& x) const {
        GevModel m = base;
        std::size_t i = 0;
        m.location.c0 = x[i++];
        if (m.location.coef_count() == 2) m.location.c1 = x[i++];
        m.scale.c0 = x[i++];
        if (m.scale.coef_count() == 2) m.scale.c1 = x[i++];
        if (shape_free) m.shape = x[i++];
        return m;
    }

    std::vector<double> encode(const GevModel& m) const {
        std::vector<double> x;
        x.push_back(m.location.c0);
        if (m.location.coef_count() == 2) x.push_back(m.location.c1);
        x.push_back(m.scale.c0);
        if (m.scale.coef_count() == 2) x.push_back(m.scale.c1);
        if (shape_free) x.push_back(m.shape);
        return x;
    }
};

double penalized_objective(const GevModel& m, const BlockMaxSeries& maxima, double t_min,
                           double t_max) {
    // Keep the simplex navigable near the support boundary: violations get a
    // large finite penalty with a slope back toward feasibility.
    double pen = 0.0;
    const double s_min = std::min(m.scale(t_min), m.scale(t_max));
    if (!(s_min > 0.0)) pen += 1.0 - s_min;
    if (std::fabs(m.shape) > 20.0) pen += std::fabs(m.shape) - 20.0;
    if (pen == 0.0) {
        double viol = 0.0;
        double nll = 0.0;
        for (std::size_t i = 0; i < maxima.size(); ++i) {
            const double t = maxima.block_covariates[i];
            const double sigma = m.scale(t);
            if (!(sigma > 0.0)) {
                viol += 1.0 - sigma;
                continue;
            }
            const double arg = 1.0 + m.shape * (maxima.maxima[i] - m.location(t)) / sigma;
            if (std::fabs(m.shape) >= kXiZeroTol && arg <= 0.0) {
                viol += 1.0 - arg;
                continue;
            }
            nll -= gev_log_pdf(maxima.maxima[i], m.shape, m.location(t), sigma);
        }
        if (viol > 0.0) return kInfeasiblePenalty + 1e6 * viol;
        if (!std::isfinite(nll)) return kInfeasiblePenalty;
        return nll;
    }
    return kInfeasiblePenalty + 1e6 * pen;
}

std::vector<double> natural_standard_errors(const GevModel& model, const BlockMaxSeries& maxima,
                                            bool shape_free, bool* ok) {
    NaturalCodec codec{model, shape_free};
    const std::size_t p = codec.dim();
    const std::vector<double> x0 = codec.encode(model);
    auto f = [&](std::vector<double> x) {
        return gev_negative_log_likelihood(codec.decode(x), maxima);
    };
    std::vector<double> h(p);
    for (std::size_t j = 0; j < p; ++j) h[j] = 1e-4 * std::max(1.0, std::fabs(x0[j]));

    std::vector<double> hess(p * p, 0.0);
    const double f0 = f(x0);
    bool finite = std::isfinite(f0);
    for (std::size_t i = 0; i < p && finite; ++i) {
        for (std::size_t j = i; j < p && finite; ++j) {
            double v;
            std::vector<double> x = x0;
            if (i == j) {
                x[i] = x0[i] + h[i];
                const double fp = f(x);
                x[i] = x0[i] - h[i];
                const double fm = f(x);
                v = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
                finite = std::isfinite(fp) && std::isfinite(fm);
            } else {
                x[i] = x0[i] + h[i];
                x[j] = x0[j] + h[j];
                const double fpp = f(x);
                x[j] = x0[j] - h[j];
                const double fpm = f(x);
                x[i] = x0[i] - h[i];
                x[j] = x0[j] + h[j];
                const double fmp = f(x);
                x[j] = x0[j] - h[j];
                const double fmm = f(x);
                v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
                finite = std::isfinite(fpp) && std::isfinite(fpm) && std::isfinite(fmp) &&
                         std::isfinite(fmm);
            }
            hess[i * p + j] = v;
            hess[j * p + i] = v;
        }
    }
    if (!finite || !detail::cholesky_invert(hess, p)) {
        *ok = false;
        return {};
    }
    std::vector<double> se(p);
    for (std::size_t j = 0; j < p; ++j) {
        const double var = hess[j * p + j];
        if (!(var > 0.0) || !std::isfinite(var)) {
            *ok = false;
            return {};
        }
        se[j] = std::sqrt(var);
    }
    *ok = true;
    return se;
}

}  // namespace

FitResult fit_mle(const BlockMaxSeries& maxima, ParamForm location_form, ParamForm scale_form,
                  std::optional<double> fixed_shape, const FitOptions& opts) {
    const std::size_t n = maxima.size();
    if (n < 20)
        fail(Errc::insufficient_data,
             "need at least 20 block maxima, have " + std::to_string(n));

    const auto [t_min_it, t_max_it] =
        std::minmax_element(maxima.block_covariates.begin(), maxima.block_covariates.end());
    const double t_min = *t_min_it, t_max = *t_max_it;

    const detail::PwmEstimate pwm = detail::gev_pwm_estimate(maxima.maxima);

    GevModel init;
    init.shape = fixed_shape.value_or(pwm.xi);
    init.shape_fixed = fixed_shape.has_value();
    init.location.form = location_form;
    init.location.c1 = 0.0;
    init.location.c0 =
        location_form == ParamForm::exponential ? std::log(std::max(pwm.mu, 1e-6)) : pwm.mu;
    init.scale.form = scale_form;
    init.scale.c1 = 0.0;
    init.scale.c0 = scale_form == ParamForm::exponential ? std::log(pwm.sigma) : pwm.sigma;

    CoordCodec codec{location_form, scale_form, !fixed_shape.has_value(), fixed_shape.value_or(0.0)};
    auto objective = [&](const std::vector<double>& x) {
        return penalized_objective(codec.decode(x), maxima, t_min, t_max);
    };

    std::vector<double> x0 = codec.encode(init);
    const std::size_t dim = codec.dim();
    std::vector<double> step(dim);
    {
        std::size_t i = 0;
        if (!fixed_shape.has_value()) step[i++] = 0.1;
        step[i++] = 0.1 * std::max(1.0, std::fabs(init.location.c0));
        if (location_form != ParamForm::constant) step[i++] = 0.1;
        if (scale_form == ParamForm::constant) {
            step[i++] = 0.25;  // log-sigma coordinate
        } else {
            step[i++] = scale_form == ParamForm::exponential
                            ? 0.25
                            : 0.1 * std::max(1.0, std::fabs(init.scale.c0));
            step[i++] = 0.1;
        }
    }

    detail::NelderMeadOptions nm_opts{opts.tol, opts.max_iter};
    detail::NelderMeadResult best = detail::nelder_mead(objective, x0, step, nm_opts);
    bool any_converged = best.converged;

    // Jittered restarts around the incumbent, deterministic across runs.
    std::mt19937_64 jitter_rng(0x5e7f175u);
    auto jitter_u = [&]() {
        return ((jitter_rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0) - 0.5;  // (-0.5, 0.5)
    };
    for (int r = 1; r < opts.restarts; ++r) {
        std::vector<double> xr = best.x;
        std::vector<double> sr = step;
        for (std::size_t j = 0; j < dim; ++j) {
            xr[j] += step[j] * jitter_u();
            sr[j] = step[j] * (0.5 + 0.5 * (jitter_u() + 0.5));
        }
        detail::NelderMeadResult run = detail::nelder_mead(objective, xr, sr, nm_opts);
        if (run.fmin < best.fmin) best = run;
        any_converged = any_converged || run.converged;
    }

    if (best.fmin >= kInfeasiblePenalty)
        fail(Errc::fit_infeasible, "no feasible parameter values found for the given maxima");

    FitResult result;
    result.model = codec.decode(best.x);
    result.neg_log_likelihood = best.fmin;
    result.converged = any_converged;
    result.n_maxima = n;

    bool se_ok = false;
    std::vector<double> se =
        natural_standard_errors(result.model, maxima, !fixed_shape.has_value(), &se_ok);
    if (se_ok) {
        // Canonical layout: location, scale, shape (0 when fixed).
        if (fixed_shape.has_value()) se.push_back(0.0);
        result.standard_errors = std::move(se);
        result.se_available = true;
    }
    return result;
}

double likelihood_ratio_test(const FitResult& nested, const FitResult& full) {
    if (nested.n_maxima != full.n_maxima)
        fail(Errc::invalid_comparison, "models were fitted on different numbers of maxima");

    auto nested_form = [](ParamForm inner, ParamForm outer) {
        return inner == outer || inner == ParamForm::constant;
    };
    const GevModel& m_n = nested.model;
    const GevModel& m_f = full.model;
    // A fixed shape is nested within a free one; a free shape is not nested
    // within a fixed one.
    const bool shape_nested = m_n.shape_fixed || !m_f.shape_fixed;
    if (!nested_form(m_n.location.form, m_f.location.form) ||
        !nested_form(m_n.scale.form, m_f.scale.form) || !shape_nested)
        fail(Errc::invalid_comparison, "nested model is not a submodel of the full model");

    const int df = static_cast<int>(m_f.free_param_count()) -
                   static_cast<int>(m_n.free_param_count());
    if (df < 0) fail(Errc::invalid_comparison, "nested model has more free parameters");

    double deviance = 2.0 * (nested.neg_log_likelihood - full.neg_log_likelihood);
    if (deviance < -1e-8)
        fail(Errc::fit_inconsistency,
             "full-model likelihood is below the nested model's (deviance " +
                 std::to_string(deviance) + ")");
    deviance = std::max(deviance, 0.0);
    if (df == 0) {
        if (deviance > 1e-8)
            fail(Errc::fit_inconsistency, "identical parameter sets with nonzero deviance");
        return 1.0;
    }
    return detail::chi_squared_upper_tail(deviance, df);
}

std::vector<double> gumbel_normalize(const BlockMaxSeries& maxima, const GevModel& model) {
    std::vector<double> out(maxima.size());
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        const double t = maxima.block_covariates[i];
        const double sigma = model.scale(t);
        if (!(sigma > 0.0)) {
            bad.push_back(i);
            continue;
        }
        const double s = (maxima.maxima[i] - model.location(t)) / sigma;
        if (std::fabs(model.shape) < kXiZeroTol) {
            out[i] = s;
            continue;
        }
        const double arg = 1.0 + model.shape * s;
        if (arg <= 0.0) {
            bad.push_back(i);
            continue;
        }
        out[i] = std::log1p(model.shape * s) / model.shape;
    }
    if (!bad.empty()) {
        std::string msg = "model support violated at " + std::to_string(bad.size()) +
                          " maxima (indices";
        for (std::size_t j = 0; j < std::min<std::size_t>(bad.size(), 10); ++j)
            msg += " " + std::to_string(bad[j]);
        if (bad.size() > 10) msg += " ...";
        msg += ")";
        fail(Errc::normalization_domain, msg);
    }
    return out;
}

}  // namespace sevt
