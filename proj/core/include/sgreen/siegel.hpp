#pragma once

#include <complex>

#include "sgreen/matcore.hpp"

namespace sgreen {

// Spectral parameter lambda = x + i*eps. The recursion requires eps > 0;
// eps = 0 is permitted only in band-geometry queries.
struct SpectralParameter {
    double x = 0.0;
    double eps = 0.0;
    Complex value() const { return {x, eps}; }
    void require_upper() const {
        if (!(eps > 0.0)) throw InvalidParameter("spectral parameter requires Im lambda > 0");
    }
};

// A point of the Siegel half space SH_m: Z = X + iY with Y > 0. The
// imaginary part and its inverse / half powers are cached since every metric
// and diagnostic evaluation needs them.
class SiegelPoint {
public:
    explicit SiegelPoint(ComplexSym Z);
    static SiegelPoint scaled_identity(int m, Complex z);  // z on the diag, Im z > 0

    int dim() const { return z_.dim(); }
    const CMat& mat() const { return z_.mat(); }
    const ComplexSym& value() const { return z_; }
    const Mat& X() const { return x_; }
    const Mat& Y() const { return y_; }
    const Mat& Yinv() const { return yinv_; }
    const Mat& Ysqrt() const { return ysqrt_; }
    const Mat& Yinvsqrt() const { return yinvsqrt_; }

private:
    ComplexSym z_;
    Mat x_, y_, yinv_, ysqrt_, yinvsqrt_;
};

// cd(Z,W) = tr[(Im Z)^{-1}(Z-W)^*(Im W)^{-1}(Z-W)], the quadratic form
// underlying the Siegel metric d = acosh(1 + cd/2).
double cd(const SiegelPoint& Z, const SiegelPoint& W);
double dist(const SiegelPoint& Z, const SiegelPoint& W);

// The two hyperbolic isometries the recursion is built from.
SiegelPoint mobius_neg_inv(const SiegelPoint& Z);
SiegelPoint translate(const SiegelPoint& Z, const RealSym& S);

// One recursion step: Phi_delta(Z) = -(Z + lambda - D - delta)^{-1}.
SiegelPoint phi(const SiegelPoint& Z, const RealSym& delta, const SpectralParameter& lam,
                const RealSym& D);

// Free fixed point Z_lambda = Phi_0(Z_lambda), computed per eigenchannel of D
// by selecting the upper-half-plane root of z^2 + (lambda - mu) z + 1 = 0.
// For eps = 0 the energy must lie strictly inside I_D (else OutsideBand).
SiegelPoint free_fixed_point(const SpectralParameter& lam, const RealSym& D);

// Upper-half-plane root for one channel with D-eigenvalue mu.
Complex free_fixed_point_scalar(Complex lambda, double mu);

// Free full-line diagonal Green's function W_lambda = -(2 Z_lambda + lambda - D)^{-1}.
SiegelPoint w_lambda(const SpectralParameter& lam, const RealSym& D);

double cd_lambda(const SiegelPoint& Z, const SpectralParameter& lam, const RealSym& D);

// Diagnostics for the one-step ratio bound
//   (cd_l^2(Phi_delta(Z)) + 1)/(cd_l^2(Z) + 1) <= 1 + A(Z,delta) + C(Z,delta),
// with the linear term A averaging to zero for mean-zero delta.
struct Lemma25Report {
    double a = 0.0;          // linear-in-delta cross term
    double b = 0.0;          // quadratic term, >= 0
    double A = 0.0;          // 2 cd_l a / (cd_l^2 + 1)
    double C = 0.0;          // (2a^2 + 2 cd_l b + 2 b^2) / (cd_l^2 + 1)
    double cd_l = 0.0;       // cd_lambda(Z)
    double lhs_ratio = 0.0;  // measured ratio above
    double bound_rhs = 0.0;  // 1 + A + C
};

Lemma25Report lemma25_report(const SiegelPoint& Z, const RealSym& delta,
                             const SpectralParameter& lam, const RealSym& D);

}  // namespace sgreen
