#include <doctest.h>

#include <cmath>

#include "sgreen/oracle.hpp"
#include "sgreen/random.hpp"
#include "sgreen/siegel.hpp"

using namespace sgreen;

TEST_CASE("assemble: small windows") {
    OperatorSpec free1(RealSym::Zero(1));
    PotentialSample q0(0, 0, 1);
    Mat H = assemble(free1, q0, 0, 1).matrix();
    Mat want(2, 2);
    want << 0, -1, -1, 0;
    CHECK((H - want).norm() == 0.0);

    OperatorSpec strip = strip_dirichlet(2, 1);
    PotentialSample q2(0, 0, 2);
    CHECK((assemble(strip, q2, 0, 0).matrix() - strip.D().mat()).norm() == 0.0);
}

TEST_CASE("assemble: size cap") {
    OperatorSpec spec(RealSym::Zero(4));
    PotentialSample q(0, 0, 4);
    CHECK_THROWS_AS(assemble(spec, q, 0, 5000), SizeCap);
}

TEST_CASE("assemble: free spectrum moments match the arcsine law") {
    OperatorSpec spec(RealSym::Zero(1));
    PotentialSample q(0, 0, 1);
    const long W = 2000;
    DenseWindowOperator opr = assemble(spec, q, 0, W - 1);
    auto [w, V] = sym_eig(opr.matrix());
    const double mean = w.mean();
    const double var = (w.array() - mean).square().mean();
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("dense_green_block: 2x2 free window by hand") {
    // H = [[0,-1],[-1,0]], lambda = i: (H - i)^{-1} top-left = i/2... det = -2
    OperatorSpec spec(RealSym::Zero(1));
    PotentialSample q(0, 0, 1);
    DenseWindowOperator opr = assemble(spec, q, 0, 1);
    ComplexSym G = dense_green_block(opr, {0.0, 1.0}, 0);
    CHECK(std::abs(G.mat()(0, 0) - Complex(0, 0.5)) < 1e-13);
}

TEST_CASE("dense_green_block: single-site window is the one-site resolvent") {
    auto rng = make_rng(401);
    for (int t = 0; t < 20; ++t) {
        const int m = 1 + static_cast<int>(rng() % 4);
        OperatorSpec spec(random_real_sym(m, rng, 0.5));
        DisorderModel model(DisorderKind::diagonal_iid, m, 1.0, 0.0);
        PotentialSample q = sample_potential(model, rng(), 0, 0);
        SpectralParameter lam{0.2, 0.4};
        DenseWindowOperator opr = assemble(spec, q, 0, 0);
        ComplexSym G = dense_green_block(opr, lam, 0);
        CMat direct = (q.at(0).mat().cast<Complex>() + spec.D().mat().cast<Complex>() -
                       lam.value() * CMat::Identity(m, m))
                          .partialPivLu()
                          .solve(CMat::Identity(m, m));
        CHECK((G.mat() - direct).norm() < 1e-12);
        // the block lies in the Siegel half space (Im part PD)
        CHECK_NOTHROW(SiegelPoint{G});
    }
}

TEST_CASE("dense_green_block: free chain matches w_lambda at depth") {
    OperatorSpec spec(RealSym::Zero(1));
    PotentialSample q(0, 0, 1);
    SpectralParameter lam{0.3, 0.2};
    DenseWindowOperator opr = assemble(spec, q, -300, 300);
    ComplexSym G = dense_green_block(opr, lam, 0);
    SiegelPoint W = w_lambda(lam, spec.D());
    CHECK((G.mat() - W.mat()).norm() < 1e-8);
}

TEST_CASE("half_line_block: explicit small cases") {
    OperatorSpec spec(RealSym::Zero(1));
    PotentialSample q(0, 0, 1);
    ComplexSym G = half_line_block(spec, q, {0.0, 1.0}, 0, 1);
    CHECK(std::abs(G.mat()(0, 0) - Complex(0, 0.5)) < 1e-13);

    auto rng = make_rng(402);
    OperatorSpec spec2(random_real_sym(3, rng, 0.5));
    DisorderModel model(DisorderKind::diagonal_iid, 3, 1.0, 0.0);
    PotentialSample q2 = sample_potential(model, 77, -2, 2);
    SpectralParameter lam{-0.1, 0.6};
    ComplexSym G0 = half_line_block(spec2, q2, lam, 0, 0);
    CMat direct = (q2.at(0).mat().cast<Complex>() + spec2.D().mat().cast<Complex>() -
                   lam.value() * CMat::Identity(3, 3))
                      .partialPivLu()
                      .solve(CMat::Identity(3, 3));
    CHECK((G0.mat() - direct).norm() < 1e-12);
}

TEST_CASE("half_line_block: Schur identity with the nested recursion") {
    auto rng = make_rng(403);
    for (int t = 0; t < 10; ++t) {
        const int m = 2;
        const long N = 25;
        OperatorSpec spec(random_real_sym(m, rng, 0.4));
        DisorderModel model(DisorderKind::uniform, m, 0.9, 0.0);
        PotentialSample q = sample_potential(model, rng(), 0, N);
        SpectralParameter lam{0.1, 0.3};
        ComplexSym direct = half_line_block(spec, q, lam, 0, N);
        CMat seed = lam.value() * CMat::Identity(m, m) - spec.D().mat().cast<Complex>() -
                    q.at(N).mat().cast<Complex>();
        SiegelPoint Z(ComplexSym(CMat(-cs_inverse(ComplexSym(std::move(seed))).mat())));
        for (long n = N - 1; n >= 0; --n) Z = phi(Z, q.at(n), lam, spec.D());
        CHECK((direct.mat() - Z.mat()).norm() < 1e-10);
    }
}

TEST_CASE("half_line_block_backward: mirror of the forward window") {
    auto rng = make_rng(404);
    OperatorSpec spec(random_real_sym(2, rng, 0.4));
    DisorderModel model(DisorderKind::uniform, 2, 0.8, 0.0);
    PotentialSample q = sample_potential(model, 13, -12, 12);
    PotentialSample qr(-12, 12, 2);
    for (long n = -12; n <= 12; ++n) qr.set(n, q.at(-n));
    SpectralParameter lam{0.25, 0.2};
    ComplexSym b = half_line_block_backward(spec, q, lam, 0, 12);
    ComplexSym f = half_line_block(spec, qr, lam, 0, 12);
    CHECK((b.mat() - f.mat()).norm() < 1e-12);
}
