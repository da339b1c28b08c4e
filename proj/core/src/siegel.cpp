#include "sgreen/siegel.hpp"

#include <cmath>

namespace sgreen {

SiegelPoint::SiegelPoint(ComplexSym Z) : z_(std::move(Z)) {
    x_ = z_.real_part();
    y_ = z_.imag_part();
    auto [w, V] = sym_eig(y_);
    if (w(0) <= kPdTol * std::max(std::abs(w(w.size() - 1)), 1e-300))
        throw NotPositiveDefinite("SiegelPoint: Im Z not positive definite (min eig " +
                                  std::to_string(w(0)) + ")");
    Vec winv = w.cwiseInverse();
    Vec wsqrt = w.array().sqrt();
    Vec winvsqrt = wsqrt.cwiseInverse();
    yinv_ = V * winv.asDiagonal() * V.transpose();
    ysqrt_ = V * wsqrt.asDiagonal() * V.transpose();
    yinvsqrt_ = V * winvsqrt.asDiagonal() * V.transpose();
}

SiegelPoint SiegelPoint::scaled_identity(int m, Complex z) {
    return SiegelPoint(ComplexSym(CMat(z * CMat::Identity(m, m))));
}

double cd(const SiegelPoint& Z, const SiegelPoint& W) {
    if (Z.dim() != W.dim()) throw DimensionMismatch("cd: dimension mismatch");
    const CMat d = Z.mat() - W.mat();
    const Complex t = (Z.Yinv().cast<Complex>() * d.adjoint() * W.Yinv().cast<Complex>() * d).trace();
    return std::max(0.0, t.real());
}

double dist(const SiegelPoint& Z, const SiegelPoint& W) {
    return std::acosh(1.0 + 0.5 * cd(Z, W));
}

SiegelPoint mobius_neg_inv(const SiegelPoint& Z) {
    return SiegelPoint(ComplexSym(CMat(-cs_inverse(Z.value()).mat())));
}

SiegelPoint translate(const SiegelPoint& Z, const RealSym& S) {
    if (Z.dim() != S.dim()) throw DimensionMismatch("translate: dimension mismatch");
    return SiegelPoint(ComplexSym(CMat(Z.mat() + S.mat().cast<Complex>())));
}

SiegelPoint phi(const SiegelPoint& Z, const RealSym& delta, const SpectralParameter& lam,
                const RealSym& D) {
    lam.require_upper();
    const int m = Z.dim();
    if (delta.dim() != m || D.dim() != m) throw DimensionMismatch("phi: dimension mismatch");
    CMat arg = Z.mat() + lam.value() * CMat::Identity(m, m) - D.mat().cast<Complex>() -
               delta.mat().cast<Complex>();
    CMat out = -cs_inverse(ComplexSym(std::move(arg))).mat();
    try {
        return SiegelPoint(ComplexSym(std::move(out)));
    } catch (const NotPositiveDefinite& e) {
        throw InvariantBreach(std::string("phi: image left SH_m: ") + e.what());
    }
}

Complex free_fixed_point_scalar(Complex lambda, double mu) {
    // roots of z^2 + (lambda - mu) z + 1 = 0; exactly one has Im > 0 when
    // Im lambda > 0, and the limit root lies on the upper unit semicircle for
    // real lambda inside the channel band.
    const Complex p = lambda - mu;
    const Complex s = std::sqrt(p * p - 4.0);
    const Complex r1 = 0.5 * (-p + s);
    const Complex r2 = 0.5 * (-p - s);
    return (r1.imag() >= r2.imag()) ? r1 : r2;
}

SiegelPoint free_fixed_point(const SpectralParameter& lam, const RealSym& D) {
    const int m = D.dim();
    auto [mu, V] = sym_eig(D.mat());
    if (lam.eps == 0.0) {
        // permitted only strictly inside I_D, where every channel root keeps
        // a positive imaginary part
        for (int k = 0; k < m; ++k)
            if (std::abs(lam.x - mu(k)) >= 2.0)
                throw OutsideBand("free_fixed_point: real lambda outside interior of I_D");
    } else if (lam.eps < 0.0) {
        throw InvalidParameter("free_fixed_point: Im lambda < 0");
    }
    Eigen::VectorXcd z(m);
    for (int k = 0; k < m; ++k) z(k) = free_fixed_point_scalar(lam.value(), mu(k));
    CMat Z = V.cast<Complex>() * z.asDiagonal() * V.transpose().cast<Complex>();
    return SiegelPoint(ComplexSym(std::move(Z)));
}

SiegelPoint w_lambda(const SpectralParameter& lam, const RealSym& D) {
    const int m = D.dim();
    SiegelPoint Zl = free_fixed_point(lam, D);
    CMat arg = 2.0 * Zl.mat() + lam.value() * CMat::Identity(m, m) - D.mat().cast<Complex>();
    return SiegelPoint(ComplexSym(CMat(-cs_inverse(ComplexSym(std::move(arg))).mat())));
}

double cd_lambda(const SiegelPoint& Z, const SpectralParameter& lam, const RealSym& D) {
    return cd(free_fixed_point(lam, D), Z);
}

Lemma25Report lemma25_report(const SiegelPoint& Z, const RealSym& delta,
                             const SpectralParameter& lam, const RealSym& D) {
    lam.require_upper();
    const SiegelPoint Zl = free_fixed_point(lam, D);
    const CMat dZ = Z.mat() - Zl.mat();
    const CMat Ylinv = Zl.Yinv().cast<Complex>();
    const CMat Yinv = Z.Yinv().cast<Complex>();
    const CMat del = delta.mat().cast<Complex>();

    Lemma25Report r;
    // traces written with Y_l^{-1/2} ... Y_l^{-1/2} collapsed cyclically
    r.a = -((Ylinv * del * Yinv * dZ).trace() + (Ylinv * dZ.adjoint() * Yinv * del).trace()).real();
    r.b = std::max(0.0, (Ylinv * del * Yinv * del).trace().real());
    r.cd_l = cd(Zl, Z);
    const double den = r.cd_l * r.cd_l + 1.0;
    r.A = 2.0 * r.cd_l * r.a / den;
    r.C = (2.0 * r.a * r.a + 2.0 * r.cd_l * r.b + 2.0 * r.b * r.b) / den;
    const double cd_img = cd(Zl, phi(Z, delta, lam, D));
    r.lhs_ratio = (cd_img * cd_img + 1.0) / den;
    r.bound_rhs = 1.0 + r.A + r.C;
    return r;
}

}  // namespace sgreen
