#include <benchmark/benchmark.h>

#include "sevt/extremal_index.hpp"
#include "sevt/gev.hpp"
#include "sevt/series.hpp"
#include "sevt/simulate.hpp"
#include "sevt/stats.hpp"

namespace {

using namespace sevt;

void BM_gev_cdf(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gev_cdf(z, 0.2, 10.0, 2.0));
        z += 1e-6;
    }
}
BENCHMARK(BM_gev_cdf);

void BM_gev_quantile(benchmark::State& state) {
    double p = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gev_quantile(p, 0.2, 10.0, 2.0));
        p = p < 0.99 ? p + 1e-7 : 0.01;
    }
}
BENCHMARK(BM_gev_quantile);

void BM_moving_minimum(benchmark::State& state) {
    SyntheticSpec spec;
    spec.length = static_cast<std::size_t>(state.range(0));
    spec.seed = 1;
    const TimeSeries s = sample_gev(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moving_minimum(s, 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_moving_minimum)->Arg(100000)->Arg(1000000);

void BM_moving_quantile_yearly(benchmark::State& state) {
    SyntheticSpec spec;
    spec.length = static_cast<std::size_t>(state.range(0));
    spec.seed = 2;
    spec.t_end = 25.0;
    const TimeSeries s = sample_gev(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moving_quantile(s, 1.0, 0.95));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_moving_quantile_yearly)->Arg(20000);

void BM_ferro_segers(benchmark::State& state) {
    const TimeSeries s = sample_moving_max(static_cast<std::size_t>(state.range(0)), 1, 3);
    std::vector<double> copy = s.values;
    const double u = detail::quantile_type7(copy, 0.95);
    TimeSeries threshold;
    threshold.covariates = s.covariates;
    threshold.values.assign(s.size(), u);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ferro_segers(s, threshold));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ferro_segers)->Arg(200000);

void BM_fit_mle_stationary(benchmark::State& state) {
    SyntheticSpec spec;
    spec.xi = 0.2;
    spec.location = ParamModel::constant(10.0);
    spec.scale = ParamModel::constant(2.0);
    spec.length = static_cast<std::size_t>(state.range(0));
    spec.seed = 42;
    const TimeSeries s = sample_gev(spec);
    BlockMaxSeries bm;
    bm.block_covariates = s.covariates;
    bm.maxima = s.values;
    bm.block_length = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(bm, ParamForm::constant, ParamForm::constant));
    }
}
BENCHMARK(BM_fit_mle_stationary)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
