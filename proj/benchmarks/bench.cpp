// Microbenchmarks for the hot paths: the Moebius step, the Siegel distance,
// the half-line Green engine, and the Riesz projection quadrature.
#include <benchmark/benchmark.h>

#include <random>

#include "sgreen/blockdecomp.hpp"
#include "sgreen/green.hpp"
#include "sgreen/model.hpp"
#include "sgreen/siegel.hpp"

using namespace sgreen;

namespace {

RealSym random_real_sym(int m, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Mat M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            M(i, j) = g(rng);
            M(j, i) = M(i, j);
        }
    return RealSym(std::move(M));
}

SiegelPoint random_point(int m, std::mt19937_64& rng) {
    RealSym X = random_real_sym(m, rng, 0.5);
    Mat A(m, m);
    std::normal_distribution<double> g(0.0, 0.5);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = g(rng);
    Mat Y = A * A.transpose() + Mat::Identity(m, m);
    return SiegelPoint(ComplexSym(RealSym(std::move(X)), RealSym(std::move(Y))));
}

}  // namespace

static void BM_phi(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    SiegelPoint Z = random_point(m, rng);
    RealSym D = random_real_sym(m, rng, 0.3);
    RealSym q = random_real_sym(m, rng, 0.5);
    SpectralParameter lam{0.2, 0.1};
    for (auto _ : state) {
        Z = phi(Z, q, lam, D);
        benchmark::DoNotOptimize(Z);
    }
}
BENCHMARK(BM_phi)->Arg(2)->Arg(4)->Arg(8);

static void BM_cd(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::mt19937_64 rng(2);
    SiegelPoint Z = random_point(m, rng);
    SiegelPoint W = random_point(m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(cd(Z, W));
}
BENCHMARK(BM_cd)->Arg(2)->Arg(4)->Arg(8);

static void BM_forward_green(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    OperatorSpec spec(random_real_sym(m, rng, 0.3));
    DisorderModel model(DisorderKind::uniform, m, 1.0, 0.0);
    PotentialSample q = sample_potential(model, 7, -100, 100);
    SpectralParameter lam{0.2, 0.1};
    for (auto _ : state) {
        GreenResult g = forward_green(spec, q, lam, 0);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_forward_green)->Arg(1)->Arg(2)->Arg(4);

static void BM_riesz_projection(benchmark::State& state) {
    Mat H1(1, 1), H2(1, 1), V(1, 1);
    H1 << 0.0;
    H2 << 3.0;
    V << 0.3;
    BlockOperator B(RealSym(std::move(H1)), RealSym(std::move(H2)), std::move(V));
    ContourSpec c;
    c.radius = 1.5;
    for (auto _ : state) {
        Mat P = riesz_projection(B, c);
        benchmark::DoNotOptimize(P);
    }
}
BENCHMARK(BM_riesz_projection);

BENCHMARK_MAIN();
