#include <doctest.h>

#include <cmath>

#include "sevt/error.hpp"
#include "sevt/series.hpp"
#include "sevt/simulate.hpp"

using namespace sevt;

namespace {

TimeSeries make_series(std::vector<double> values) {
    TimeSeries s;
    s.values = std::move(values);
    s.covariates.resize(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        s.covariates[i] = static_cast<double>(i);
    return s;
}

}  // namespace

TEST_CASE("moving_minimum matches direct window enumeration") {
    const TimeSeries s = make_series({5, 2, 7, 3});
    const TimeSeries out = moving_minimum(s, 2);
    REQUIRE(out.size() == 3);
    CHECK(out.values[0] == 2);
    CHECK(out.values[1] == 2);
    CHECK(out.values[2] == 3);
    CHECK(out.covariates[0] == 0);  // window labelled by its start
    CHECK(out.covariates[2] == 2);
}

TEST_CASE("moving_minimum identity and full-window cases") {
    const TimeSeries s = make_series({1, 2, 3, 4, 5});
    const TimeSeries same = moving_minimum(s, 1);
    CHECK(same.values == s.values);
    CHECK(same.covariates == s.covariates);
    const TimeSeries all = moving_minimum(s, 5);
    REQUIRE(all.size() == 1);
    CHECK(all.values[0] == 1);
}

TEST_CASE("moving_minimum rejects bad windows") {
    const TimeSeries s = make_series({1, 2, 3});
    CHECK_THROWS_WITH_AS(moving_minimum(s, 0), doctest::Contains("k must be >= 1"), Error);
    CHECK_THROWS_AS(moving_minimum(s, 4), Error);
    try {
        moving_minimum(s, 4);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::window_too_large);
    }
}

TEST_CASE("moving_minimum threshold property on random series") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 20);
        TimeSeries s;
        for (std::size_t i = 0; i < n; ++i) {
            s.covariates.push_back(static_cast<double>(i));
            s.values.push_back(rng.uniform());
        }
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * (n - 1));
        const TimeSeries y = moving_minimum(s, k);
        const double z = rng.uniform();
        for (std::size_t j = 0; j < y.size(); ++j) {
            bool all_above = true;
            for (std::size_t i = j; i < j + k; ++i) all_above &= s.values[i] >= z;
            CHECK((y.values[j] >= z) == all_above);
        }
    }
}

TEST_CASE("moving_minimum is pointwise nonincreasing in k") {
    Rng rng(11);
    TimeSeries s;
    for (std::size_t i = 0; i < 60; ++i) {
        s.covariates.push_back(static_cast<double>(i));
        s.values.push_back(rng.uniform() * 10);
    }
    for (std::size_t k = 1; k < 10; ++k) {
        const TimeSeries a = moving_minimum(s, k);
        const TimeSeries b = moving_minimum(s, k + 1);
        for (std::size_t j = 0; j < b.size(); ++j) CHECK(b.values[j] <= a.values[j]);
    }
}

TEST_CASE("block_maxima basic cases") {
    const TimeSeries monotone = make_series({1, 2, 3, 4, 5, 6});
    const BlockMaxSeries bm = block_maxima(monotone, 3);
    REQUIRE(bm.size() == 2);
    CHECK(bm.maxima[0] == 3);
    CHECK(bm.maxima[1] == 6);
    CHECK(bm.block_covariates[0] == 1);  // middle index of the block

    const TimeSeries s = make_series({4, 9, 2, 7, 5});
    const BlockMaxSeries bm2 = block_maxima(s, 2);
    REQUIRE(bm2.size() == 2);  // trailing 5 discarded
    CHECK(bm2.maxima[0] == 9);
    CHECK(bm2.maxima[1] == 7);

    const BlockMaxSeries identity = block_maxima(s, 1);
    CHECK(identity.maxima == s.values);

    CHECK_THROWS_AS(block_maxima(s, 6), Error);
}

TEST_CASE("block maxima of moving_minimum(X,1) equals block maxima of X") {
    Rng rng(3);
    TimeSeries s;
    for (std::size_t i = 0; i < 101; ++i) {
        s.covariates.push_back(0.25 * static_cast<double>(i));
        s.values.push_back(rng.uniform());
    }
    const BlockMaxSeries a = block_maxima(moving_minimum(s, 1), 7);
    const BlockMaxSeries b = block_maxima(s, 7);
    CHECK(a.maxima == b.maxima);
    CHECK(a.block_covariates == b.block_covariates);
}

TEST_CASE("moving_quantile on constant and known data") {
    TimeSeries constant = make_series(std::vector<double>(25, 4.5));
    const TimeSeries out = moving_quantile(constant, 3.0, 0.7);
    for (double v : out.values) CHECK(v == 4.5);

    // 1..100 with every window covering the whole series: type-7 0.95
    // quantile of 1..100 is 95.05.
    TimeSeries ramp;
    for (int i = 0; i < 100; ++i) {
        ramp.covariates.push_back(static_cast<double>(i) / 99.0);
        ramp.values.push_back(static_cast<double>(i + 1));
    }
    const TimeSeries q = moving_quantile(ramp, 10.0, 0.95);
    for (double v : q.values) CHECK(v == doctest::Approx(95.05).epsilon(1e-12));

    const TimeSeries med = moving_quantile(make_series({1, 2, 3}), 100.0, 0.5);
    CHECK(med.values[1] == 2);
}

TEST_CASE("moving_quantile is monotone in q") {
    Rng rng(23);
    TimeSeries s;
    for (std::size_t i = 0; i < 200; ++i) {
        s.covariates.push_back(static_cast<double>(i) / 10.0);
        s.values.push_back(rng.uniform() * 5);
    }
    const TimeSeries lo = moving_quantile(s, 2.0, 0.25);
    const TimeSeries hi = moving_quantile(s, 2.0, 0.75);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(hi.values[i] >= lo.values[i]);

    CHECK_THROWS_AS(moving_quantile(s, 2.0, 1.0), Error);
    CHECK_THROWS_AS(moving_quantile(s, 0.0, 0.5), Error);
}

TEST_CASE("autocorrelation normalization and iid behaviour") {
    SyntheticSpec spec;
    spec.xi = 0.0;
    spec.length = 10000;
    spec.seed = 99;
    const TimeSeries iid = sample_gev(spec);
    const std::vector<double> acf = autocorrelation(iid, 10);
    CHECK(acf[0] == 1.0);
    for (std::size_t h = 1; h <= 10; ++h) CHECK(std::fabs(acf[h]) < 0.03);

    TimeSeries periodic = make_series({1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1});
    const std::vector<double> pacf = autocorrelation(periodic, 2);
    CHECK(pacf[2] == doctest::Approx(1.0).epsilon(0.2));

    CHECK_THROWS_AS(autocorrelation(periodic, 12), Error);
}

TEST_CASE("drop_zeros") {
    const TimeSeries s = make_series({0, 3, 0, 5});
    const TimeSeries out = drop_zeros(s);
    REQUIRE(out.size() == 2);
    CHECK(out.values[0] == 3);
    CHECK(out.values[1] == 5);
    CHECK(out.covariates[0] == 1);

    const TimeSeries no_zeros = make_series({1, 2});
    CHECK(drop_zeros(no_zeros).values == no_zeros.values);

    const TimeSeries all_zeros = make_series({0, 0});
    CHECK_THROWS_AS(drop_zeros(all_zeros), Error);
}
