#include <doctest.h>

#include <cmath>

#include "sevt/error.hpp"
#include "sevt/gev.hpp"
#include "sevt/simulate.hpp"

using namespace sevt;

namespace {

// Block maxima "as sampled": treats a simulated series directly as maxima.
BlockMaxSeries as_maxima(const TimeSeries& s) {
    BlockMaxSeries bm;
    bm.block_covariates = s.covariates;
    bm.maxima = s.values;
    bm.block_length = 1;
    return bm;
}

BlockMaxSeries stationary_gev_maxima(std::size_t n, double xi, double mu, double sigma,
                                     std::uint64_t seed) {
    SyntheticSpec spec;
    spec.xi = xi;
    spec.location = ParamModel::constant(mu);
    spec.scale = ParamModel::constant(sigma);
    spec.length = n;
    spec.seed = seed;
    return as_maxima(sample_gev(spec));
}

}  // namespace

TEST_CASE("pwm initializer is close on a large stationary sample") {
    const BlockMaxSeries bm = stationary_gev_maxima(20000, 0.2, 10.0, 2.0, 77);
    const detail::PwmEstimate est = detail::gev_pwm_estimate(bm.maxima);
    CHECK(est.xi == doctest::Approx(0.2).epsilon(0.2));
    CHECK(est.mu == doctest::Approx(10.0).epsilon(0.02));
    CHECK(est.sigma == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("stationary MLE recovery within 3 asymptotic SEs") {
    const BlockMaxSeries bm = stationary_gev_maxima(5000, 0.2, 10.0, 2.0, 42);
    const FitResult fit = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    REQUIRE(fit.converged);
    REQUIRE(fit.se_available);
    const double mu = fit.model.location.c0;
    const double sigma = fit.model.scale.c0;
    const double xi = fit.model.shape;
    // standard_errors layout: location, scale, shape.
    CHECK(std::fabs(mu - 10.0) <= 3.0 * fit.standard_errors[0]);
    CHECK(std::fabs(sigma - 2.0) <= 3.0 * fit.standard_errors[1]);
    CHECK(std::fabs(xi - 0.2) <= 3.0 * fit.standard_errors[2]);
    // Spec-level absolute bounds for this seed protocol.
    CHECK(std::fabs(xi - 0.2) <= 0.04);
    CHECK(std::fabs(mu - 10.0) <= 0.15);
    CHECK(std::fabs(sigma - 2.0) <= 0.12);
    CHECK(fit.n_maxima == 5000);
}

TEST_CASE("fixed-shape fit cannot beat the free fit and recovers mu/sigma") {
    const BlockMaxSeries bm = stationary_gev_maxima(5000, 0.2, 10.0, 2.0, 42);
    const FitResult free_fit = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    const FitResult fixed = fit_mle(bm, ParamForm::constant, ParamForm::constant, 0.2);
    CHECK(fixed.model.shape == 0.2);
    CHECK(fixed.model.shape_fixed);
    CHECK(fixed.neg_log_likelihood >= free_fit.neg_log_likelihood - 1e-8);
    CHECK(std::fabs(fixed.model.location.c0 - 10.0) <= 0.12);
    CHECK(std::fabs(fixed.model.scale.c0 - 2.0) <= 0.10);
}

TEST_CASE("linear location trend is recovered") {
    SyntheticSpec spec;
    spec.xi = 0.15;
    spec.location = ParamModel::linear(5.0, 1.0);
    spec.scale = ParamModel::constant(1.5);
    spec.length = 3000;
    spec.seed = 7;
    spec.t_start = 0.0;
    spec.t_end = 25.0;
    const BlockMaxSeries bm = as_maxima(sample_gev(spec));
    const FitResult fit = fit_mle(bm, ParamForm::linear, ParamForm::constant);
    REQUIRE(fit.converged);
    CHECK(std::fabs(fit.model.location.c1 - 1.0) <= 0.1);
}

TEST_CASE("numerical gradient vanishes at the optimum") {
    const BlockMaxSeries bm = stationary_gev_maxima(2000, 0.25, 4.0, 1.0, 5);
    const FitResult fit = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    const double f0 = fit.neg_log_likelihood;
    const GevModel& m = fit.model;

    auto nll_at = [&](double dmu, double dsigma, double dxi) {
        GevModel p = m;
        p.location.c0 += dmu;
        p.scale.c0 += dsigma;
        p.shape += dxi;
        return gev_negative_log_likelihood(p, bm);
    };
    const double scale = std::max(1.0, std::fabs(f0));
    const double h = 1e-5;
    const double g_mu = (nll_at(h, 0, 0) - nll_at(-h, 0, 0)) / (2 * h);
    const double g_sigma = (nll_at(0, h, 0) - nll_at(0, -h, 0)) / (2 * h);
    const double g_xi = (nll_at(0, 0, h) - nll_at(0, 0, -h)) / (2 * h);
    CHECK(std::fabs(g_mu) * std::max(1.0, std::fabs(m.location.c0)) / scale < 1e-3);
    CHECK(std::fabs(g_sigma) * std::max(1.0, std::fabs(m.scale.c0)) / scale < 1e-3);
    CHECK(std::fabs(g_xi) / scale < 1e-3);
}

TEST_CASE("location-scale equivariance of the stationary fit") {
    const BlockMaxSeries bm = stationary_gev_maxima(2000, 0.1, 3.0, 1.2, 13);
    const FitResult base = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    REQUIRE(base.se_available);

    const double a = 2.5, b = -4.0;
    BlockMaxSeries scaled = bm;
    for (double& z : scaled.maxima) z = a * z + b;
    const FitResult fit = fit_mle(scaled, ParamForm::constant, ParamForm::constant);
    REQUIRE(fit.se_available);
    CHECK(std::fabs(fit.model.location.c0 - (a * base.model.location.c0 + b)) <=
          3.0 * a * base.standard_errors[0] + 1e-6);
    CHECK(std::fabs(fit.model.scale.c0 - a * base.model.scale.c0) <=
          3.0 * a * base.standard_errors[1] + 1e-6);
    CHECK(std::fabs(fit.model.shape - base.model.shape) <= 3.0 * base.standard_errors[2] + 1e-6);
}

TEST_CASE("fit_mle preconditions") {
    BlockMaxSeries tiny;
    for (int i = 0; i < 10; ++i) {
        tiny.block_covariates.push_back(i);
        tiny.maxima.push_back(i);
    }
    tiny.block_length = 1;
    CHECK_THROWS_AS(fit_mle(tiny, ParamForm::constant, ParamForm::constant), Error);
}

TEST_CASE("likelihood ratio test basics") {
    const BlockMaxSeries bm = stationary_gev_maxima(800, 0.1, 5.0, 2.0, 21);
    const FitResult stationary = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    const FitResult trend = fit_mle(bm, ParamForm::linear, ParamForm::constant);

    // Identical models: zero deviance, p = 1.
    CHECK(likelihood_ratio_test(stationary, stationary) == 1.0);
    // Stationary data: trend should not be significant most of the time;
    // at minimum the p-value is a valid probability.
    const double p = likelihood_ratio_test(stationary, trend);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);

    // Non-nested direction is rejected.
    CHECK_THROWS_AS(likelihood_ratio_test(trend, stationary), Error);
}

TEST_CASE("likelihood ratio test detects a strong trend") {
    SyntheticSpec spec;
    spec.xi = 0.1;
    spec.location = ParamModel::linear(10.0, 1.0);
    spec.scale = ParamModel::constant(2.0);
    spec.length = 1000;
    spec.seed = 3;
    spec.t_start = 0.0;
    spec.t_end = 25.0;
    const BlockMaxSeries bm = as_maxima(sample_gev(spec));
    const FitResult stationary = fit_mle(bm, ParamForm::constant, ParamForm::constant);
    const FitResult trend = fit_mle(bm, ParamForm::linear, ParamForm::constant);
    CHECK(likelihood_ratio_test(stationary, trend) < 1e-5);
}

TEST_CASE("chi-square mapping of a known deviance") {
    // Deviance 10.83 with one degree of freedom corresponds to p ~ 0.001.
    FitResult nested, full;
    nested.model.location = ParamModel::constant(0.0);
    nested.model.scale = ParamModel::constant(1.0);
    full.model.location = ParamModel::linear(0.0, 0.0);
    full.model.scale = ParamModel::constant(1.0);
    nested.n_maxima = full.n_maxima = 100;
    full.neg_log_likelihood = 100.0;
    nested.neg_log_likelihood = 100.0 + 10.83 / 2.0;
    CHECK(likelihood_ratio_test(nested, full) == doctest::Approx(0.001).epsilon(0.01));
}
