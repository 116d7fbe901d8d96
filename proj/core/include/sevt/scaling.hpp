#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sevt {

enum class ScalingForm { polynomial, power, exponential };

const char* scaling_form_name(ScalingForm f);
ScalingForm scaling_form_from_name(const std::string& name);

/// Fitted scaling function g(k) linking the k-window GEV location/scale to
/// the single-extreme parameters.
struct ScalingLaw {
    ScalingForm form = ScalingForm::exponential;
    int poly_degree = 0;  ///< meaningful for the polynomial form
    /// polynomial: c0..cd with g(k) = sum c_j k^j; power: {a, beta} with
    /// g(k) = a k^beta; exponential: {a, b} with g(k) = a b^(k-1).
    std::vector<double> coefficients;
    double fit_r2 = 0.0;
    double adj_r2 = 0.0;
    /// R-squared measured on the log-ratio response, comparable across forms
    /// (the polynomial is fitted on the untransformed ratio).
    double transformed_r2 = 0.0;
    double transformed_adj_r2 = 0.0;
    std::vector<int> k_fit_range;
    std::vector<double> residuals;  ///< log-ratio residuals per fitted k
    std::vector<double> coef_cov;   ///< row-major covariance of the regression coefficients

    double evaluate(int k) const;  ///< g(k)
    /// Delta-method confidence interval for g(k) at +-z standard errors.
    std::pair<double, double> interval(int k, double z) const;
};

/// Per-window inputs for the scaling regression: positive location levels at
/// t = 0, scale intercepts, and extremal indexes, plus the k = 1 base values
/// repeated for convenience.
struct ScalingInputs {
    std::vector<int> k;
    std::vector<double> mu_k0;     ///< location level at t=0, strictly positive
    std::vector<double> sigma_k0;  ///< scale intercept at t=0 (raw coefficient)
    std::vector<double> theta_k;
    double xi_1 = 0.0;
    double mu_10 = 0.0;
    double sigma_10 = 0.0;
    double theta_1 = 1.0;
};

struct ScalingFitOptions {
    /// When false, reproduces the paper-literal regression of log(mu_k0) on
    /// the form's predictor without the theta adjustment; the intercept is
    /// then back-solved for `a` using the mean theta correction.
    bool theta_adjusted = true;
    /// Optional inverse-variance weights per k (e.g. from MLE standard
    /// errors of the location intercepts).
    std::optional<std::vector<double>> weights;
};

/// Least squares on the transformed response
///   r_k = log(mu_k0) - log(mu_10) - xi_1 (log theta_k - log theta_1),
/// which isolates log g(k). The exponential form regresses r on (k-1), the
/// power form on log k; the polynomial form fits the untransformed ratio
/// exp(r_k) on the basis 1, k, ..., k^degree.
ScalingLaw fit_scaling(const ScalingInputs& inputs, ScalingForm form, int poly_degree = 2,
                       const ScalingFitOptions& opts = {});

struct FormSelection {
    ScalingLaw best;
    std::vector<ScalingLaw> candidates;  ///< every form that produced a fit
};

/// Fits the exponential, power, and polynomial (degree 0..2) candidates and
/// selects by adjusted R-squared on the transformed response. Fits whose
/// R-squared ties within 1e-9 are resolved toward fewer coefficients, then
/// exponential before power before polynomial.
FormSelection select_form(const ScalingInputs& inputs, const ScalingFitOptions& opts = {});

enum class ScaleLink { identity, log_link };

struct InferredParams {
    double mu_k0 = 0.0;
    double sigma_k0 = 0.0;
    bool beyond_horizon = false;  ///< k exceeded the configured extrapolation cap
};

/// Parameter inference for window size k:
///   mu_k0 = g(k) mu_10 (theta_k/theta_1)^xi_1
/// and the same relation for the scale, either directly (identity link) or
/// on exp(sigma_k0) with the result mapped back through the natural log.
/// `k_cap` of 0 means twice the largest fitted k.
InferredParams infer_params(const ScalingLaw& law, int k, const ScalingInputs& base,
                            double theta_k, ScaleLink scale_link, int k_cap = 0);

}  // namespace sevt
