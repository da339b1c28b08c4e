#include <doctest.h>

#include "sgreen/matcore.hpp"
#include "sgreen/random.hpp"

using namespace sgreen;

TEST_CASE("herm_eig: diagonal input") {
    CMat M = CMat::Zero(2, 2);
    M(0, 0) = 3.0;
    M(1, 1) = 1.0;
    auto [w, V] = herm_eig(M);
    CHECK(w(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w(1) == doctest::Approx(3.0).epsilon(1e-14));
    // eigenvectors are a permutation of the identity
    CHECK(std::abs(V(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(V(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("herm_eig: off-diagonal hopping block") {
    Mat M(2, 2);
    M << 0, -1, -1, 0;
    auto [w, V] = herm_eig(M.cast<Complex>());
    CHECK(w(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(w(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("herm_eig: reconstruction residual") {
    auto rng = make_rng(101);
    Mat A = random_gaussian(5, 5, rng);
    Mat B = random_gaussian(5, 5, rng);
    CMat M = CMat(A.cast<Complex>()) + Complex(0, 1) * B.cast<Complex>();
    M = CMat(0.5 * (M + M.adjoint().eval()));
    auto [w, V] = herm_eig(M);
    CMat R = V * w.cast<Complex>().asDiagonal() * V.adjoint();
    CHECK((R - M).norm() < 1e-12 * M.norm());
}

TEST_CASE("herm_eig: rejects non-Hermitian input") {
    Mat M(2, 2);
    M << 0, 1, 0, 0;
    CHECK_THROWS_AS(herm_eig(M.cast<Complex>()), NonHermitian);
}

TEST_CASE("pd_sqrt: identity and diagonal") {
    CHECK((pd_sqrt(Mat(Mat::Identity(3, 3))) - Mat::Identity(3, 3)).norm() < 1e-14);
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 4.0;
    D(1, 1) = 9.0;
    Mat R = pd_sqrt(D);
    CHECK(R(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(R(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("pd_sqrt: squaring oracle on random PD") {
    auto rng = make_rng(102);
    Mat A = random_gaussian(4, 4, rng);
    Mat M = A * A.transpose() + 0.01 * Mat::Identity(4, 4);
    Mat R = pd_sqrt(M);
    CHECK((R * R - M).norm() < 1e-11 * M.norm());
}

TEST_CASE("HermPD: rejects indefinite input") {
    Mat M = Mat::Identity(2, 2);
    M(1, 1) = -1.0;
    CHECK_THROWS_AS(HermPD{M}, NotPositiveDefinite);
}

TEST_CASE("cs_inverse: scalar and diagonal") {
    ComplexSym iI(CMat(Complex(0, 1) * CMat::Identity(2, 2)));
    CHECK((cs_inverse(iI).mat() + Complex(0, 1) * CMat::Identity(2, 2)).norm() < 1e-14);
    ComplexSym z(CMat(Complex(0, 2) * CMat::Identity(1, 1)));
    CHECK(std::abs(cs_inverse(z).mat()(0, 0) - Complex(0, -0.5)) < 1e-14);
}

TEST_CASE("cs_inverse: residual on random input") {
    auto rng = make_rng(103);
    for (int t = 0; t < 10; ++t) {
        const int m = 1 + static_cast<int>(rng() % 5);
        Mat X = random_gaussian(m, m, rng);
        X = 0.5 * (X + X.transpose().eval());
        Mat A = random_gaussian(m, m, rng);
        Mat Y = A * A.transpose() + 0.1 * Mat::Identity(m, m);
        ComplexSym Z{RealSym(X), RealSym(Y)};
        ComplexSym Zi = cs_inverse(Z);
        CHECK((Z.mat() * Zi.mat() - CMat::Identity(m, m)).norm() < 1e-11);
        CHECK((Zi.mat() - Zi.mat().transpose()).norm() < 1e-12);
    }
}

TEST_CASE("norms") {
    CHECK(op_norm(Mat(Mat::Identity(3, 3))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(frob_norm(CMat(CMat::Identity(3, 3))) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = -2.0;
    D(1, 1) = 1.0;
    CHECK(op_norm(D) == doctest::Approx(2.0).epsilon(1e-14));
    auto rng = make_rng(104);
    Mat R = random_gaussian(4, 4, rng);
    CHECK(op_norm(R) <= frob_norm(CMat(R.cast<Complex>())) + 1e-14);
}

TEST_CASE("RealSym: symmetrizes but rejects gross asymmetry") {
    Mat M(2, 2);
    M << 1.0, 2.0 + 1e-13, 2.0, 1.0;
    RealSym S(M);
    CHECK(S(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    Mat bad(2, 2);
    bad << 1, 2, -2, 1;
    CHECK_THROWS_AS(RealSym{bad}, NotSymmetric);
}
