#include <doctest.h>

#include <cmath>

#include "sgreen/green.hpp"
#include "sgreen/oracle.hpp"
#include "sgreen/random.hpp"

using namespace sgreen;

namespace {
PotentialSample zero_q(int m) { return PotentialSample(0, 0, m); }
}  // namespace

TEST_CASE("forward_green: free chain converges to the fixed point") {
    auto rng = make_rng(301);
    for (int t = 0; t < 10; ++t) {
        const int m = 1 + static_cast<int>(rng() % 4);
        RealSym D = random_real_sym(m, rng, 0.5);
        std::uniform_real_distribution<double> ux(-2.0, 2.0), ue(0.01, 1.0);
        SpectralParameter lam{ux(rng), ue(rng)};
        GreenResult g = forward_green(OperatorSpec(D), zero_q(m), lam, 3);
        SiegelPoint Zl = free_fixed_point(lam, D);
        CHECK((g.value.mat() - Zl.mat()).norm() < 1e-9);
        CHECK(g.residual <= 1e-10);
    }
}

TEST_CASE("forward_green: scalar free value at lambda = i") {
    OperatorSpec spec(RealSym::Zero(1));
    GreenResult g = forward_green(spec, zero_q(1), {0.0, 1.0}, 0);
    CHECK(std::abs(g.value.mat()(0, 0) - Complex(0, (std::sqrt(5.0) - 1.0) / 2.0)) < 1e-8);
}

TEST_CASE("backward_green: free chain and reflection identity") {
    OperatorSpec spec(RealSym::Zero(1));
    SpectralParameter lam{0.4, 0.2};
    GreenResult b = backward_green(spec, zero_q(1), lam, 0);
    SiegelPoint Zl = free_fixed_point(lam, spec.D());
    CHECK((b.value.mat() - Zl.mat()).norm() < 1e-9);

    // backward at 0 for q equals forward at 0 for the reflected potential
    auto rng = make_rng(302);
    DisorderModel model(DisorderKind::uniform, 1, 0.8, 0.0);
    PotentialSample q = sample_potential(model, 17, -8, 8);
    PotentialSample qr(-8, 8, 1);
    for (long n = -8; n <= 8; ++n) qr.set(n, q.at(-n));
    GreenResult lhs = backward_green(OperatorSpec(RealSym::Zero(1)), q, lam, 0);
    GreenResult rhs = forward_green(OperatorSpec(RealSym::Zero(1)), qr, lam, 0);
    CHECK((lhs.value.mat() - rhs.value.mat()).norm() < 1e-9);
}

TEST_CASE("forward_green: one-step consistency with phi") {
    auto rng = make_rng(303);
    OperatorSpec spec(random_real_sym(2, rng, 0.3));
    DisorderModel model(DisorderKind::diagonal_iid, 2, 0.6, 0.0);
    PotentialSample q = sample_potential(model, 23, -10, 10);
    SpectralParameter lam{0.1, 0.3};
    GreenResult g0 = forward_green(spec, q, lam, 0);
    GreenResult g1 = forward_green(spec, q, lam, 1);
    SiegelPoint stepped = phi(g1.value, q.at(0), lam, spec.D());
    CHECK((g0.value.mat() - stepped.mat()).norm() < 1e-8);
}

TEST_CASE("forward_green: seed independence") {
    auto rng = make_rng(304);
    OperatorSpec spec(random_real_sym(2, rng, 0.3));
    DisorderModel model(DisorderKind::uniform, 2, 0.5, 0.0);
    PotentialSample q = sample_potential(model, 5, -6, 6);
    SpectralParameter lam{-0.2, 0.15};
    EngineConfig custom;
    custom.seeds = std::make_pair(
        ComplexSym(CMat(Complex(0.3, 2.0) * CMat::Identity(2, 2))),
        ComplexSym(CMat(Complex(-0.1, 0.4) * CMat::Identity(2, 2))));
    GreenResult a = forward_green(spec, q, lam, 0);
    GreenResult b = forward_green(spec, q, lam, 0, custom);
    CHECK((a.value.mat() - b.value.mat()).norm() < 10.0 * 1e-10);
}

TEST_CASE("forward_green: matches the dense half-line oracle") {
    auto rng = make_rng(305);
    OperatorSpec spec(random_real_sym(2, rng, 0.4));
    DisorderModel model(DisorderKind::truncated_gaussian, 2, 0.7, 0.0);
    PotentialSample q = sample_potential(model, 31, -20, 20);
    SpectralParameter lam{0.3, 0.05};
    GreenResult g = forward_green(spec, q, lam, 0);
    // Dirichlet cut far beyond the convergence depth
    ComplexSym oracle = half_line_block(spec, q, lam, 0, std::max<long>(600, g.depth_used * 2));
    CHECK((g.value.mat() - oracle.mat()).norm() < 1e-7);
}

TEST_CASE("diagonal_green: matches the dense full-line oracle") {
    // Strong disorder across the whole dense window keeps its Dirichlet
    // truncation error well below the comparison tolerance.
    auto rng = make_rng(306);
    OperatorSpec spec(random_real_sym(2, rng, 0.4));
    DisorderModel model(DisorderKind::uniform, 2, 3.0, 0.0);
    PotentialSample q = sample_potential(model, 47, -60, 60);
    SpectralParameter lam{0.2, 0.1};
    for (long n : {-3L, 0L, 5L}) {
        GreenResult g = diagonal_green(spec, q, lam, n);
        DenseWindowOperator opr = assemble(spec, q, -60, 60);
        ComplexSym oracle = dense_green_block(opr, lam, n);
        CHECK((g.value.mat() - oracle.mat()).norm() < 1e-8);
    }
}

TEST_CASE("local_dos: free closed forms") {
    OperatorSpec spec(RealSym::Zero(1));
    EngineConfig cfg;
    cfg.max_depth = 2000000000L;
    CHECK(local_dos(spec, zero_q(1), 0.0, 1e-8, 0, cfg) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-5));
    CHECK(local_dos(spec, zero_q(1), 1.0, 1e-8, 0, cfg) ==
          doctest::Approx(1.0 / (M_PI * std::sqrt(3.0))).epsilon(1e-4));
    // off-spectrum decay
    CHECK(local_dos(spec, zero_q(1), 4.0, 1e-6, 0, cfg) <= 1e-4);
}

TEST_CASE("dos_curve: free arcsine profile and empty grid") {
    OperatorSpec spec(RealSym::Zero(1));
    EngineConfig cfg;
    cfg.max_depth = 2000000000L;
    std::vector<double> xs;
    for (double x = -1.9; x <= 1.901; x += 0.1) xs.push_back(x);
    auto rows = dos_curve(spec, zero_q(1), xs, {1e-6}, 0, cfg);
    REQUIRE(rows.size() == xs.size());
    for (const auto& r : rows)
        CHECK(r.dos == doctest::Approx(1.0 / (M_PI * std::sqrt(4.0 - r.x * r.x))).epsilon(2e-4));
    CHECK(dos_curve(spec, zero_q(1), xs, {}, 0, cfg).empty());
}

TEST_CASE("dos_curve: strip support matches the free spectrum") {
    OperatorSpec spec = strip_dirichlet(2, 1);
    EngineConfig cfg;
    cfg.max_depth = 2000000000L;
    PotentialSample q(0, 0, 2);
    for (double x : {-2.5, -1.0, 0.0, 1.5, 2.9})
        CHECK(local_dos(spec, q, x, 1e-4, 0, cfg) > 1e-3);
    for (double x : {-3.5, 3.5, 5.0})
        CHECK(local_dos(spec, q, x, 1e-4, 0, cfg) < 1e-3);
}

TEST_CASE("free_iterate_scalar: agrees with explicit iteration") {
    auto rng = make_rng(307);
    std::uniform_real_distribution<double> ux(-2.5, 2.5), ue(0.01, 1.0);
    for (int t = 0; t < 40; ++t) {
        const Complex lam(ux(rng), ue(rng));
        const double mu = ux(rng) * 0.4;
        Complex z(0.3 * ux(rng), 0.5 + ue(rng));
        const long k = 1 + static_cast<long>(rng() % 40);
        Complex zit = z;
        for (long j = 0; j < k; ++j) zit = -1.0 / (zit + lam - mu);
        const Complex zcf = free_iterate_scalar(z, lam, mu, k);
        CHECK(std::abs(zit - zcf) < 1e-9 * (1.0 + std::abs(zit)));
    }
}

TEST_CASE("free_iterate_scalar: near-parabolic branch at the band edge") {
    const Complex lam(2.0, 0.0);  // p = 2, double root t = 1
    Complex z(0.1, 1.0);
    Complex zit = z;
    for (long j = 0; j < 25; ++j) zit = -1.0 / (zit + lam);
    CHECK(std::abs(free_iterate_scalar(z, lam, 0.0, 25) - zit) < 1e-8);
}

TEST_CASE("engine errors") {
    OperatorSpec spec(RealSym::Zero(1));
    CHECK_THROWS_AS(forward_green(spec, zero_q(1), {0.0, 0.0}, 0), InvalidParameter);
    EngineConfig tiny;
    tiny.max_depth = 8;
    CHECK_THROWS_AS(forward_green(spec, zero_q(1), {0.0, 1e-7}, 0, tiny), NoConvergence);
}
