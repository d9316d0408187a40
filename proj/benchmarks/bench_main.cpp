#include <benchmark/benchmark.h>

#include <vector>

#include "evostream/kernel.hpp"
#include "evostream/predictor.hpp"
#include "evostream/rng.hpp"

using namespace evostream;

namespace {

std::vector<Eigen::VectorXd> random_points(std::size_t n, Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd x(dim);
        for (Eigen::Index j = 0; j < dim; ++j) x[j] = rng.uniform(-2, 2);
        pts.push_back(std::move(x));
    }
    return pts;
}

void BM_GramMatrix(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 8, 11);
    const KernelConfig cfg{1.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_matrix(cfg, pts));
    }
}

void BM_GramMatrixSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 8, 11);
    const KernelConfig cfg{1.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_matrix_serial(cfg, pts));
    }
}

KernelPredictor bench_predictor(std::size_t reps) {
    KernelPredictor f;
    f.kernel.sigma = 1.3;
    f.representers = random_points(reps, 8, 21);
    Rng rng(22);
    f.coefficients.resize(static_cast<Eigen::Index>(reps));
    for (Eigen::Index i = 0; i < f.coefficients.size(); ++i) f.coefficients[i] = rng.uniform(-1, 1);
    return f;
}

void BM_EvaluateMany(benchmark::State& state) {
    const KernelPredictor f = bench_predictor(60);
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 8, 31);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_many(f, pts));
    }
}

void BM_EvaluateManySerial(benchmark::State& state) {
    const KernelPredictor f = bench_predictor(60);
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 8, 31);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_many_serial(f, pts));
    }
}

}  // namespace

BENCHMARK(BM_GramMatrix)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_GramMatrixSerial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_EvaluateMany)->Arg(200)->Arg(800);
BENCHMARK(BM_EvaluateManySerial)->Arg(200)->Arg(800);

BENCHMARK_MAIN();
