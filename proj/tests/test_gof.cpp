#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sevt/error.hpp"
#include "sevt/gof.hpp"
#include "sevt/simulate.hpp"
#include "sevt/stats.hpp"

using namespace sevt;

namespace {

const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };

}  // namespace

TEST_CASE("ks statistic at exact plotting positions is 0.5/n") {
    for (std::size_t n : {std::size_t{10}, std::size_t{100}, std::size_t{1000}}) {
        std::vector<double> sample(n);
        for (std::size_t i = 0; i < n; ++i)
            sample[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const TestResult res = ks_test(sample, uniform_cdf);
        CHECK(res.statistic == doctest::Approx(0.5 / static_cast<double>(n)).epsilon(1e-12));
    }
}

TEST_CASE("ks test rejects a gross shift and accepts the truth") {
    Rng rng(31);
    std::vector<double> sample(1000);
    for (double& v : sample) v = rng.uniform();
    CHECK(ks_test(sample, uniform_cdf).p_value > 0.05);

    std::vector<double> shifted = sample;
    for (double& v : shifted) v += 10.0;
    CHECK(ks_test(shifted, uniform_cdf).p_value < 1e-6);

    CHECK_THROWS_AS(ks_test({}, uniform_cdf), Error);
}

TEST_CASE("ks p-values are calibrated on the uniform null") {
    int rejections = 0;
    const int n_seeds = 100;
    for (int seed = 1; seed <= n_seeds; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed));
        std::vector<double> sample(1000);
        for (double& v : sample) v = rng.uniform();
        if (ks_test(sample, uniform_cdf).p_value < 0.05) ++rejections;
    }
    CHECK(rejections >= 2);
    CHECK(rejections <= 9);
}

TEST_CASE("ad statistic near its minimum for plotting-position data") {
    std::vector<double> sample(100);
    for (std::size_t i = 0; i < 100; ++i) sample[i] = (static_cast<double>(i) + 0.5) / 100.0;
    const TestResult res = ad_test(sample, uniform_cdf);
    CHECK(res.statistic < 0.4);
    CHECK(res.p_value > 0.9);
}

TEST_CASE("ad test is calibrated and detects misfit") {
    int rejections = 0;
    const int n_seeds = 100;
    for (int seed = 1; seed <= n_seeds; ++seed) {
        Rng rng(static_cast<std::uint64_t>(1000 + seed));
        std::vector<double> sample(1000);
        for (double& v : sample) v = rng.uniform();
        if (ad_test(sample, uniform_cdf).p_value < 0.05) ++rejections;
    }
    CHECK(rejections >= 2);
    CHECK(rejections <= 9);

    // Heavy-tailed sample against a Gumbel null.
    Rng rng(77);
    std::vector<double> heavy(500);
    for (double& v : heavy) v = gev_quantile(rng.uniform(), 0.8, 0.0, 1.0);
    const TestResult res =
        ad_test(heavy, [](double z) { return standard_gumbel_cdf(z); });
    CHECK(res.p_value < 0.01);
}

TEST_CASE("ad boundary values are clamped with a flag") {
    std::vector<double> sample{-1.0, 0.5, 2.0};  // cdf hits 0 and 1 exactly
    const TestResult res = ad_test(sample, uniform_cdf);
    CHECK(res.boundary_clamped);
    CHECK(std::isfinite(res.statistic));
}

TEST_CASE("both tests are invariant under the probability integral transform") {
    Rng rng(5);
    std::vector<double> sample(400);
    for (double& v : sample) v = gev_quantile(rng.uniform(), 0.0, 3.0, 2.0);
    const auto gumbel32 = [](double z) { return standard_gumbel_cdf((z - 3.0) / 2.0); };

    std::vector<double> pit(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) pit[i] = gumbel32(sample[i]);

    const TestResult ks_raw = ks_test(sample, gumbel32);
    const TestResult ks_pit = ks_test(pit, uniform_cdf);
    CHECK(ks_raw.statistic == doctest::Approx(ks_pit.statistic).epsilon(1e-12));

    const TestResult ad_raw = ad_test(sample, gumbel32);
    const TestResult ad_pit = ad_test(pit, uniform_cdf);
    CHECK(ad_raw.statistic == doctest::Approx(ad_pit.statistic).epsilon(1e-12));
}

TEST_CASE("p-values decrease in the statistic") {
    double prev_p = 1.1;
    for (double lambda : {0.3, 0.6, 0.9, 1.2, 1.5}) {
        const double p = sevt::detail::kolmogorov_sf(lambda);
        CHECK(p < prev_p);
        prev_p = p;
    }
    double prev_ad = 1.1;
    for (double a2 : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double p = 1.0 - sevt::detail::anderson_darling_cdf(a2);
        CHECK(p < prev_ad);
        prev_ad = p;
    }
}

TEST_CASE("qq points") {
    std::vector<double> exact(50);
    for (std::size_t i = 0; i < 50; ++i)
        exact[i] = standard_gumbel_quantile((static_cast<double>(i) + 0.5) / 50.0);
    const auto qf = [](double p) { return standard_gumbel_quantile(p); };
    for (const auto& [theory, empirical] : qq_points(exact, qf))
        CHECK(theory == doctest::Approx(empirical).epsilon(1e-12));

    const std::vector<std::pair<double, double>> single = qq_points({3.0}, qf);
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == doctest::Approx(qf(0.5)));
    CHECK(single[0].second == 3.0);

    // Misfit curvature: normal-ish sample against a heavy-tail quantile
    // shows a monotone residual sign pattern at the upper end.
    Rng rng(9);
    std::vector<double> light(400);
    for (double& v : light) v = gev_quantile(rng.uniform(), 0.0, 0.0, 1.0);
    const auto heavy_qf = [](double p) { return gev_quantile(p, 0.8, 0.0, 1.0); };
    const auto pts = qq_points(light, heavy_qf);
    int below = 0;
    for (std::size_t i = pts.size() - 40; i < pts.size(); ++i)
        if (pts[i].second < pts[i].first) ++below;
    CHECK(below >= 36);  // empirical systematically under the identity line
}
