#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "sgreen/errors.hpp"

namespace sgreen {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using Complex = std::complex<double>;

// Relative threshold below which a PD matrix is rejected rather than
// regularized; the theory guarantees strict positivity for Im lambda > 0.
inline constexpr double kPdTol = 1e-12;

double op_norm(const CMat& M);   // largest singular value
double op_norm(const Mat& M);
double frob_norm(const CMat& M);

// Real symmetric matrix. Construction symmetrizes (M + M^T)/2 but rejects
// inputs whose asymmetry exceeds a relative tolerance.
class RealSym {
public:
    RealSym() = default;
    explicit RealSym(Mat M, double asym_tol = 1e-10);
    static RealSym Zero(int n) { return RealSym(Mat::Zero(n, n)); }
    static RealSym Identity(int n) { return RealSym(Mat::Identity(n, n)); }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Mat m_;
};

// Complex symmetric matrix Z = X + iY with X, Y real symmetric.
class ComplexSym {
public:
    ComplexSym() = default;
    explicit ComplexSym(CMat Z, double asym_tol = 1e-10);
    ComplexSym(const RealSym& re, const RealSym& im);

    int dim() const { return static_cast<int>(z_.rows()); }
    const CMat& mat() const { return z_; }
    Mat real_part() const { return z_.real(); }
    Mat imag_part() const { return z_.imag(); }

private:
    CMat z_;
};

// Hermitian positive definite matrix; eigendecomposition cached at
// construction and reused for sqrt/inverse powers.
class HermPD {
public:
    explicit HermPD(CMat M, double pd_tol = kPdTol);
    explicit HermPD(const Mat& M, double pd_tol = kPdTol) : HermPD(CMat(M.cast<Complex>()), pd_tol) {}

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMat& mat() const { return m_; }
    const Vec& eigenvalues() const { return evals_; }
    double min_eig() const { return evals_(0); }
    double max_eig() const { return evals_(evals_.size() - 1); }
    CMat power(double p) const;  // M^p through the cached eigenbasis

private:
    CMat m_;
    Vec evals_;
    CMat evecs_;
};

// Hermitian eigendecomposition, eigenvalues ascending. Throws NonHermitian
// if the symmetry violation exceeds 1e-13 relative.
std::pair<Vec, CMat> herm_eig(const CMat& M);
std::pair<Vec, Mat> sym_eig(const Mat& M);

HermPD pd_sqrt(const HermPD& M);
Mat pd_sqrt(const Mat& M);  // real SPD convenience overload

// Complex symmetric inversion: LU with partial pivoting, then the result is
// symmetrized so exact symmetry remains an invariant consumers can rely on.
ComplexSym cs_inverse(const ComplexSym& Z);

}  // namespace sgreen
