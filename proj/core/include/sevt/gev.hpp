#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sevt/series.hpp"

namespace sevt {

/// Generalised extreme value CDF
///   G(z) = exp(-[1 + xi (z - mu)/sigma]^(-1/xi)),
/// with the Gumbel limit exp(-exp(-(z - mu)/sigma)) at xi = 0. Outside the
/// support the CDF is 0 (xi > 0) or 1 (xi < 0).
double gev_cdf(double z, double xi, double mu, double sigma);

/// Log density of the GEV; -inf outside the support.
double gev_log_pdf(double z, double xi, double mu, double sigma);

/// Inverse of gev_cdf: mu + (sigma/xi)[(-ln p)^(-xi) - 1], Gumbel limit
/// mu - sigma ln(-ln p).
double gev_quantile(double p, double xi, double mu, double sigma);

enum class ParamForm { constant, linear, exponential };

const char* param_form_name(ParamForm f);
ParamForm param_form_from_name(const std::string& name);

/// Covariate model for one GEV parameter: c0, c0 + c1 t, or exp(c0 + c1 t).
struct ParamModel {
    ParamForm form = ParamForm::constant;
    double c0 = 0.0;
    double c1 = 0.0;

    double operator()(double t) const;
    std::size_t coef_count() const { return form == ParamForm::constant ? 1 : 2; }

    static ParamModel constant(double c0) { return {ParamForm::constant, c0, 0.0}; }
    static ParamModel linear(double c0, double c1) { return {ParamForm::linear, c0, c1}; }
    static ParamModel exponential(double c0, double c1) {
        return {ParamForm::exponential, c0, c1};
    }
};

/// Nonstationary GEV: fixed shape plus covariate-dependent location/scale.
struct GevModel {
    double shape = 0.0;
    ParamModel location;
    ParamModel scale;
    bool shape_fixed = false;

    std::size_t free_param_count() const {
        return (shape_fixed ? 0 : 1) + location.coef_count() + scale.coef_count();
    }
};

struct EvaluatedParams {
    double mu;
    double sigma;
    double xi;
};

/// Location/scale evaluated at covariate t; throws Errc::scale_collapse if
/// the evaluated scale is not strictly positive.
EvaluatedParams evaluate_params(const GevModel& model, double t);

struct FitResult {
    GevModel model;
    double neg_log_likelihood = 0.0;
    /// Canonical order: location coefficients, scale coefficients, shape.
    /// The shape entry is 0 when the shape was held fixed. Empty (and
    /// se_available false) when the observed information is not
    /// positive-definite.
    std::vector<double> standard_errors;
    bool se_available = false;
    bool converged = false;
    std::size_t n_maxima = 0;
};

struct FitOptions {
    int restarts = 5;
    double tol = 1e-8;
    int max_iter = 10000;
};

/// Maximum-likelihood fit of a (possibly nonstationary) GEV on block maxima.
/// Initial values come from probability-weighted moments on the maxima with
/// trend coefficients started at zero; optimization is Nelder-Mead over
/// unconstrained coordinates (constant scale is log-parameterized, linear
/// scale carries a feasibility penalty over the covariate range). If
/// fixed_shape is given, xi is held at that value and excluded from the
/// search.
FitResult fit_mle(const BlockMaxSeries& maxima, ParamForm location_form, ParamForm scale_form,
                  std::optional<double> fixed_shape = std::nullopt, const FitOptions& opts = {});

/// Negative log-likelihood of a model on maxima (support violations yield
/// +inf). Exposed for diagnostics and tests.
double gev_negative_log_likelihood(const GevModel& model, const BlockMaxSeries& maxima);

/// Likelihood-ratio test of a nested model against a full model fitted on
/// the same maxima. Returns the upper-tail chi-squared probability of the
/// deviance 2(nll_nested - nll_full) with df = free-parameter difference.
double likelihood_ratio_test(const FitResult& nested, const FitResult& full);

/// Transforms maxima through the fitted model to standard Gumbel residuals:
/// z~ = (1/xi) ln(1 + xi (z - mu(t))/sigma(t)). Throws
/// Errc::normalization_domain listing offending indices if any maximum falls
/// outside the model support.
std::vector<double> gumbel_normalize(const BlockMaxSeries& maxima, const GevModel& model);

namespace detail {
/// Stationary probability-weighted-moment estimate (Hosking); used to seed
/// the likelihood search.
struct PwmEstimate {
    double xi;
    double mu;
    double sigma;
};
PwmEstimate gev_pwm_estimate(std::vector<double> sample);
}  // namespace detail

}  // namespace sevt
