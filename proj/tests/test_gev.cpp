#include <doctest.h>

#include <cmath>

#include "sevt/error.hpp"
#include "sevt/gev.hpp"
#include "sevt/simulate.hpp"

using namespace sevt;

TEST_CASE("gev_cdf reference values") {
    CHECK(gev_cdf(0.0, 0.0, 0.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // Support boundary for xi=1, mu=0, sigma=1 at z=0: 1 + z = 1 > 0, but
    // z=-1 sits exactly on the boundary.
    CHECK(gev_cdf(-1.0, 1.0, 0.0, 1.0) == 0.0);
    CHECK(gev_cdf(-2.0, 1.0, 0.0, 1.0) == 0.0);
    // Hand-evaluated: 1 + 0.5*(14-10)/2 = 2, 2^(-2) = 0.25.
    CHECK(gev_cdf(14.0, 0.5, 10.0, 2.0) == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
    CHECK(gev_cdf(14.0, 0.5, 10.0, 2.0) == doctest::Approx(0.778801).epsilon(1e-6));
    CHECK_THROWS_AS(gev_cdf(0.0, 0.1, 0.0, -1.0), Error);
}

TEST_CASE("gev_cdf monotone with limits at the support ends") {
    for (double xi : {-0.3, 0.0, 0.2, 1.0}) {
        double prev = -1.0;
        for (double z = -30.0; z <= 30.0; z += 0.25) {
            const double c = gev_cdf(z, xi, 1.0, 2.0);
            CHECK(c >= prev);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
            prev = c;
        }
    }
    CHECK(gev_cdf(1e9, 0.2, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(gev_cdf(-1e9, 0.2, 0.0, 1.0) == 0.0);
}

TEST_CASE("gev_quantile closed form and round trip") {
    CHECK(gev_quantile(std::exp(-1.0), 0.0, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gev_quantile(std::exp(-0.25), 0.5, 10.0, 2.0) == doctest::Approx(14.0).epsilon(1e-12));
    CHECK_THROWS_AS(gev_quantile(0.0, 0.1, 0.0, 1.0), Error);
    CHECK_THROWS_AS(gev_quantile(1.0, 0.1, 0.0, 1.0), Error);

    Rng rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const double xi = -0.5 + 1.5 * rng.uniform();
        const double mu = -10.0 + 20.0 * rng.uniform();
        const double sigma = 0.1 + 5.0 * rng.uniform();
        const double p = 0.001 + 0.998 * rng.uniform();
        const double z = gev_quantile(p, xi, mu, sigma);
        CHECK(gev_cdf(z, xi, mu, sigma) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("gumbel continuity at xi -> 0") {
    for (double z = -5.0; z <= 10.0; z += 0.5) {
        const double a = gev_cdf(z, 1e-9, 2.0, 3.0);
        const double b = gev_cdf(z, 0.0, 2.0, 3.0);
        CHECK(std::fabs(a - b) < 1e-6);
    }
}

TEST_CASE("evaluate_params by form") {
    GevModel m;
    m.shape = 0.06;
    m.location = ParamModel::linear(110.11, 4.49);
    m.scale = ParamModel::exponential(3.72, 0.02);
    const EvaluatedParams at0 = evaluate_params(m, 0.0);
    CHECK(at0.mu == doctest::Approx(110.11));
    CHECK(at0.sigma == doctest::Approx(std::exp(3.72)).epsilon(1e-12));
    CHECK(std::exp(3.72) == doctest::Approx(41.26).epsilon(1e-3));

    GevModel c;
    c.location = ParamModel::constant(5.0);
    c.scale = ParamModel::constant(2.0);
    CHECK(evaluate_params(c, 123.0).mu == 5.0);

    GevModel collapse;
    collapse.location = ParamModel::constant(0.0);
    collapse.scale = ParamModel::linear(1.0, -1.0);
    CHECK_THROWS_AS(evaluate_params(collapse, 2.0), Error);
}

TEST_CASE("gumbel_normalize identities and domain errors") {
    BlockMaxSeries bm;
    bm.block_length = 1;
    GevModel m;
    m.shape = 0.7;
    m.location = ParamModel::linear(3.0, 0.5);
    m.scale = ParamModel::constant(2.0);
    for (int i = 0; i < 5; ++i) {
        bm.block_covariates.push_back(static_cast<double>(i));
        bm.maxima.push_back(m.location(static_cast<double>(i)));  // z = mu(t)
    }
    for (double z : gumbel_normalize(bm, m)) CHECK(z == doctest::Approx(0.0).epsilon(1e-14));

    BlockMaxSeries one;
    one.block_covariates = {0.0};
    one.maxima = {std::exp(1.0) - 1.0};
    GevModel unit;
    unit.shape = 1.0;
    unit.location = ParamModel::constant(0.0);
    unit.scale = ParamModel::constant(1.0);
    CHECK(gumbel_normalize(one, unit)[0] == doctest::Approx(1.0).epsilon(1e-12));

    BlockMaxSeries bad;
    bad.block_covariates = {0.0, 1.0};
    bad.maxima = {-5.0, 0.5};
    try {
        gumbel_normalize(bad, unit);
        FAIL("expected normalization-domain error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::normalization_domain);
        CHECK(std::string(e.what()).find("0") != std::string::npos);
    }
}
