#include "sevt/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sevt/error.hpp"
#include "sevt/stats.hpp"

namespace sevt {

const char* scaling_form_name(ScalingForm f) {
    switch (f) {
        case ScalingForm::polynomial: return "polynomial";
        case ScalingForm::power: return "power";
        case ScalingForm::exponential: return "exponential";
    }
    return "unknown";
}

ScalingForm scaling_form_from_name(const std::string& name) {
    if (name == "polynomial") return ScalingForm::polynomial;
    if (name == "power") return ScalingForm::power;
    if (name == "exponential") return ScalingForm::exponential;
    fail(Errc::config_error, "unknown scaling form '" + name + "'");
}

double ScalingLaw::evaluate(int k) const {
    if (k < 1) fail(Errc::invalid_window, "window size k must be >= 1");
    const double dk = static_cast<double>(k);
    switch (form) {
        case ScalingForm::exponential:
            return coefficients[0] * std::pow(coefficients[1], dk - 1.0);
        case ScalingForm::power:
            return coefficients[0] * std::pow(dk, coefficients[1]);
        case ScalingForm::polynomial: {
            double g = 0.0, kp = 1.0;
            for (double c : coefficients) {
                g += c * kp;
                kp *= dk;
            }
            return g;
        }
    }
    return 0.0;
}

std::pair<double, double> ScalingLaw::interval(int k, double z) const {
    const double g = evaluate(k);
    if (coef_cov.empty()) return {g, g};
    const std::size_t p = coefficients.size();
    std::vector<double> x(p);
    const double dk = static_cast<double>(k);
    if (form == ScalingForm::polynomial) {
        double kp = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
            x[j] = kp;
            kp *= dk;
        }
        double var = 0.0;
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b) var += x[a] * coef_cov[a * p + b] * x[b];
        const double hw = z * std::sqrt(std::max(var, 0.0));
        return {g - hw, g + hw};
    }
    // Multiplicative forms: the covariance is that of the log-space
    // regression coefficients (intercept, slope).
    x[0] = 1.0;
    x[1] = form == ScalingForm::exponential ? dk - 1.0 : std::log(dk);
    double var = 0.0;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) var += x[a] * coef_cov[a * 2 + b] * x[b];
    const double hw = z * std::sqrt(std::max(var, 0.0));
    return {g * std::exp(-hw), g * std::exp(hw)};
}

namespace {

struct Transformed {
    std::vector<double> response;  ///< r_k = log ratio, isolating log g(k)
    double mean_theta_term = 0.0;  ///< mean of xi (log theta_k - log theta_1)
};

void validate_inputs(const ScalingInputs& in) {
    const std::size_t n = in.k.size();
    if (in.mu_k0.size() != n || in.sigma_k0.size() != n || in.theta_k.size() != n)
        fail(Errc::misaligned, "scaling input vectors differ in length");
    std::set<int> distinct(in.k.begin(), in.k.end());
    if (distinct.size() < 3)
        fail(Errc::insufficient_data, "need at least 3 distinct window sizes, have " +
                                          std::to_string(distinct.size()));
    if (!(in.xi_1 > 0.0))
        fail(Errc::invalid_shape, "scaling regression requires a Frechet shape (xi_1 > 0)");
    if (!(in.mu_10 > 0.0) || !(in.theta_1 > 0.0 && in.theta_1 <= 1.0))
        fail(Errc::log_domain, "base location level must be positive and theta_1 in (0,1]");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(in.mu_k0[i] > 0.0))
            fail(Errc::log_domain, "location level at k=" + std::to_string(in.k[i]) +
                                       " is not strictly positive");
        if (!(in.theta_k[i] > 0.0 && in.theta_k[i] <= 1.0))
            fail(Errc::log_domain,
                 "theta at k=" + std::to_string(in.k[i]) + " outside (0,1]");
        if (in.k[i] < 1) fail(Errc::invalid_window, "window sizes must be >= 1");
    }
}

Transformed transform_response(const ScalingInputs& in, bool theta_adjusted) {
    Transformed tr;
    tr.response.resize(in.k.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < in.k.size(); ++i) {
        const double theta_term =
            in.xi_1 * (std::log(in.theta_k[i]) - std::log(in.theta_1));
        acc += theta_term;
        tr.response[i] = std::log(in.mu_k0[i]) - std::log(in.mu_10) -
                         (theta_adjusted ? theta_term : 0.0);
    }
    tr.mean_theta_term = acc / static_cast<double>(in.k.size());
    return tr;
}

// R-squared of fitted log g against the theta-adjusted log-ratio response,
// so candidates fitted in different spaces compare on one footing.
void fill_transformed_stats(ScalingLaw& law, const ScalingInputs& in) {
    const Transformed tr = transform_response(in, true);
    const std::size_t n = in.k.size();
    law.residuals.assign(n, 0.0);
    double mean_r = 0.0;
    for (double r : tr.response) mean_r += r;
    mean_r /= static_cast<double>(n);

    double ss_res = 0.0, ss_tot = 0.0;
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = law.evaluate(in.k[i]);
        if (!(g > 0.0)) {
            feasible = false;
            break;
        }
        law.residuals[i] = tr.response[i] - std::log(g);
        ss_res += law.residuals[i] * law.residuals[i];
        ss_tot += (tr.response[i] - mean_r) * (tr.response[i] - mean_r);
    }
    if (!feasible) {
        law.transformed_r2 = -1.0;  // excluded from form selection
        law.transformed_adj_r2 = -1.0;
        return;
    }
    double r2;
    if (ss_tot <= 1e-300) {
        r2 = ss_res <= 1e-18 ? 1.0 : 0.0;
    } else {
        r2 = 1.0 - ss_res / ss_tot;
    }
    law.transformed_r2 = r2;
    const double p = static_cast<double>(law.coefficients.size());
    const double dn = static_cast<double>(n);
    law.transformed_adj_r2 =
        dn - p > 0.0 ? 1.0 - (1.0 - r2) * (dn - 1.0) / (dn - p) : r2;
}

}  // namespace

ScalingLaw fit_scaling(const ScalingInputs& inputs, ScalingForm form, int poly_degree,
                       const ScalingFitOptions& opts) {
    validate_inputs(inputs);
    const std::size_t n = inputs.k.size();
    const Transformed tr = transform_response(inputs, opts.theta_adjusted);
    const std::vector<double>* w = opts.weights ? &*opts.weights : nullptr;

    ScalingLaw law;
    law.form = form;
    law.k_fit_range = inputs.k;

    if (form == ScalingForm::exponential || form == ScalingForm::power) {
        std::vector<double> predictor(n);
        for (std::size_t i = 0; i < n; ++i) {
            predictor[i] = form == ScalingForm::exponential
                               ? static_cast<double>(inputs.k[i]) - 1.0
                               : std::log(static_cast<double>(inputs.k[i]));
        }
        const detail::OlsFit fit =
            detail::ols({std::vector<double>(n, 1.0), predictor}, tr.response, w);
        double intercept = fit.coef[0];
        if (!opts.theta_adjusted) intercept -= tr.mean_theta_term;
        const double a = std::exp(intercept);
        law.coefficients = form == ScalingForm::exponential
                               ? std::vector<double>{a, std::exp(fit.coef[1])}
                               : std::vector<double>{a, fit.coef[1]};
        law.fit_r2 = fit.r2;
        law.adj_r2 = fit.adj_r2;
        law.coef_cov = fit.cov;
    } else {
        if (poly_degree < 0) fail(Errc::config_error, "polynomial degree must be >= 0");
        if (static_cast<std::size_t>(poly_degree) + 1 > n)
            fail(Errc::degenerate_design, "polynomial degree exceeds the number of window sizes");
        law.poly_degree = poly_degree;
        std::vector<double> ratio(n);
        for (std::size_t i = 0; i < n; ++i) ratio[i] = std::exp(tr.response[i]);
        std::vector<std::vector<double>> cols;
        for (int d = 0; d <= poly_degree; ++d) {
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i)
                c[i] = std::pow(static_cast<double>(inputs.k[i]), d);
            cols.push_back(std::move(c));
        }
        const detail::OlsFit fit = detail::ols(cols, ratio, w);
        law.coefficients = fit.coef;
        law.fit_r2 = fit.r2;
        law.adj_r2 = fit.adj_r2;
        law.coef_cov = fit.cov;
    }
    fill_transformed_stats(law, inputs);
    return law;
}

FormSelection select_form(const ScalingInputs& inputs, const ScalingFitOptions& opts) {
    FormSelection sel;
    std::string last_error;
    auto try_fit = [&](ScalingForm form, int degree) {
        try {
            sel.candidates.push_back(fit_scaling(inputs, form, degree, opts));
        } catch (const Error& e) {
            last_error = e.what();
        }
    };
    try_fit(ScalingForm::exponential, 0);
    try_fit(ScalingForm::power, 0);
    const int max_degree =
        std::min(2, static_cast<int>(inputs.k.size()) - 1);
    for (int d = 0; d <= max_degree; ++d) try_fit(ScalingForm::polynomial, d);

    const ScalingLaw* best = nullptr;
    double best_r2 = -2.0;
    for (const ScalingLaw& law : sel.candidates)
        best_r2 = std::max(best_r2, law.transformed_r2);
    if (best_r2 < -1.5) {
        fail(Errc::degenerate_design,
             last_error.empty() ? "no scaling form could be fitted" : last_error);
    }

    auto rank = [](ScalingForm f) {
        switch (f) {
            case ScalingForm::exponential: return 0;
            case ScalingForm::power: return 1;
            case ScalingForm::polynomial: return 2;
        }
        return 3;
    };
    for (const ScalingLaw& law : sel.candidates) {
        if (law.transformed_r2 < -0.5) continue;  // infeasible for comparison
        if (law.transformed_r2 < best_r2 - 1e-9) continue;
        if (!best) {
            best = &law;
            continue;
        }
        // Ties within 1e-9 of the best fit go to the most parsimonious form.
        if (law.coefficients.size() < best->coefficients.size() ||
            (law.coefficients.size() == best->coefficients.size() &&
             rank(law.form) < rank(best->form))) {
            best = &law;
        }
    }
    if (!best) {
        // No candidate ties with the max: pick the highest adjusted R^2.
        for (const ScalingLaw& law : sel.candidates) {
            if (law.transformed_r2 < -0.5) continue;
            if (!best || law.transformed_adj_r2 > best->transformed_adj_r2) best = &law;
        }
    }
    sel.best = *best;
    return sel;
}

InferredParams infer_params(const ScalingLaw& law, int k, const ScalingInputs& base,
                            double theta_k, ScaleLink scale_link, int k_cap) {
    if (k < 1) fail(Errc::invalid_window, "window size k must be >= 1");
    if (!(theta_k > 0.0 && theta_k <= 1.0))
        fail(Errc::log_domain, "theta_k must lie in (0,1]");
    const double g = law.evaluate(k);
    const double ratio = std::pow(theta_k / base.theta_1, base.xi_1);

    InferredParams out;
    out.mu_k0 = g * base.mu_10 * ratio;
    if (scale_link == ScaleLink::identity) {
        out.sigma_k0 = g * base.sigma_10 * ratio;
    } else {
        if (!(g > 0.0))
            fail(Errc::log_domain,
                 "scaling function nonpositive at k=" + std::to_string(k) +
                     "; log-link inference undefined");
        out.sigma_k0 = std::log(g) + base.sigma_10 +
                       base.xi_1 * (std::log(theta_k) - std::log(base.theta_1));
    }
    int cap = k_cap;
    if (cap <= 0 && !law.k_fit_range.empty())
        cap = 2 * *std::max_element(law.k_fit_range.begin(), law.k_fit_range.end());
    out.beyond_horizon = cap > 0 && k > cap;
    return out;
}

}  // namespace sevt
