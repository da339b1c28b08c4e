#include "sgreen/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace sgreen {

double op_norm(const CMat& M) {
    if (M.size() == 0) return 0.0;
    if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
    Eigen::JacobiSVD<CMat> svd(M);
    return svd.singularValues()(0);
}

double op_norm(const Mat& M) { return op_norm(CMat(M.cast<Complex>())); }

double frob_norm(const CMat& M) { return M.norm(); }

RealSym::RealSym(Mat M, double asym_tol) {
    if (M.rows() != M.cols()) throw DimensionMismatch("RealSym: matrix not square");
    const double scale = M.norm();
    const double asym = (M - M.transpose()).norm();
    if (asym > asym_tol * std::max(scale, 1.0))
        throw NotSymmetric("RealSym: asymmetry " + std::to_string(asym) + " exceeds tolerance");
    m_ = 0.5 * (M + M.transpose().eval());
}

ComplexSym::ComplexSym(CMat Z, double asym_tol) {
    if (Z.rows() != Z.cols()) throw DimensionMismatch("ComplexSym: matrix not square");
    const double scale = Z.norm();
    const double asym = (Z - Z.transpose()).norm();
    if (asym > asym_tol * std::max(scale, 1.0))
        throw NotSymmetric("ComplexSym: asymmetry " + std::to_string(asym) + " exceeds tolerance");
    z_ = 0.5 * (Z + Z.transpose().eval());
}

ComplexSym::ComplexSym(const RealSym& re, const RealSym& im) {
    if (re.dim() != im.dim()) throw DimensionMismatch("ComplexSym: re/im dimension mismatch");
    z_ = re.mat().cast<Complex>() + Complex(0, 1) * im.mat().cast<Complex>();
}

HermPD::HermPD(CMat M, double pd_tol) {
    auto [w, U] = herm_eig(M);
    if (w(0) <= pd_tol * std::max(std::abs(w(w.size() - 1)), 1e-300))
        throw NotPositiveDefinite("HermPD: min eigenvalue " + std::to_string(w(0)) +
                                  " below threshold");
    m_ = std::move(M);
    evals_ = std::move(w);
    evecs_ = std::move(U);
}

CMat HermPD::power(double p) const {
    Vec wp = evals_.array().pow(p);
    return evecs_ * wp.asDiagonal() * evecs_.adjoint();
}

std::pair<Vec, CMat> herm_eig(const CMat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("herm_eig: matrix not square");
    const double scale = M.norm();
    if ((M - M.adjoint()).norm() > 1e-13 * std::max(scale, 1.0))
        throw NonHermitian("herm_eig: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint().eval()));
    if (es.info() != Eigen::Success) throw NonHermitian("herm_eig: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<Vec, Mat> sym_eig(const Mat& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("sym_eig: matrix not square");
    if ((M - M.transpose()).norm() > 1e-12 * std::max(M.norm(), 1.0))
        throw NotSymmetric("sym_eig: input not symmetric within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose().eval()));
    if (es.info() != Eigen::Success) throw NotSymmetric("sym_eig: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

HermPD pd_sqrt(const HermPD& M) { return HermPD(M.power(0.5)); }

Mat pd_sqrt(const Mat& M) {
    auto [w, V] = sym_eig(M);
    if (w(0) <= kPdTol * std::max(std::abs(w(w.size() - 1)), 1e-300))
        throw NotPositiveDefinite("pd_sqrt: matrix not positive definite");
    Vec ws = w.array().sqrt();
    return V * ws.asDiagonal() * V.transpose();
}

ComplexSym cs_inverse(const ComplexSym& Z) {
    const int n = Z.dim();
    Eigen::PartialPivLU<CMat> lu(Z.mat());
    CMat inv = lu.solve(CMat::Identity(n, n));
    const double resid = (Z.mat() * inv - CMat::Identity(n, n)).norm();
    // cond(Z) estimated from the computed inverse
    const double cond = op_norm(Z.mat()) * op_norm(inv);
    if (!std::isfinite(resid) || resid > 1e-11 * std::max(cond, 1.0))
        throw Singular("cs_inverse: solve residual " + std::to_string(resid) +
                       " too large (cond ~ " + std::to_string(cond) + ")");
    return ComplexSym(0.5 * (inv + inv.transpose().eval()), 1e-2);
}

}  // namespace sgreen
