#include "sgreen/oracle.hpp"

#include <Eigen/LU>

namespace sgreen {

DenseWindowOperator::DenseWindowOperator(long n_min, long n_max, int m, Mat H)
    : n_min_(n_min), n_max_(n_max), m_(m), h_(std::move(H)) {
    if (n_min > n_max) throw InvalidParameter("DenseWindowOperator: empty window");
    if (h_.rows() != width() * m_) throw DimensionMismatch("DenseWindowOperator: size mismatch");
}

long DenseWindowOperator::block_index(long n) const {
    if (n < n_min_ || n > n_max_) throw InvalidParameter("DenseWindowOperator: site outside window");
    return (n - n_min_) * m_;
}

DenseWindowOperator assemble(const OperatorSpec& spec, const PotentialSample& q, long n_min,
                             long n_max) {
    const int m = spec.channels();
    const long W = n_max - n_min + 1;
    if (W * m > 8192) throw SizeCap("assemble: window dimension exceeds 8192");
    Mat H = Mat::Zero(W * m, W * m);
    for (long i = 0; i < W; ++i) {
        H.block(i * m, i * m, m, m) = spec.D().mat() + q.at(n_min + i).mat();
        if (i + 1 < W) {
            H.block(i * m, (i + 1) * m, m, m) = -Mat::Identity(m, m);
            H.block((i + 1) * m, i * m, m, m) = -Mat::Identity(m, m);
        }
    }
    return DenseWindowOperator(n_min, n_max, m, std::move(H));
}

ComplexSym dense_green_block(const DenseWindowOperator& opr, const SpectralParameter& lam, long n) {
    lam.require_upper();
    const int m = opr.channels();
    const long N = opr.matrix().rows();
    const long off = opr.block_index(n);
    CMat A = opr.matrix().cast<Complex>() - lam.value() * CMat::Identity(N, N);
    CMat rhs = CMat::Zero(N, m);
    rhs.block(off, 0, m, m) = CMat::Identity(m, m);
    Eigen::PartialPivLU<CMat> lu(std::move(A));
    CMat X = lu.solve(rhs);
    CMat block = X.block(off, 0, m, m);
    return ComplexSym(std::move(block), 1e-9);
}

ComplexSym half_line_block(const OperatorSpec& spec, const PotentialSample& q,
                           const SpectralParameter& lam, long n0, long depth) {
    if (depth < 0) throw InvalidParameter("half_line_block: negative depth");
    DenseWindowOperator opr = assemble(spec, q, n0, n0 + depth);
    return dense_green_block(opr, lam, n0);
}

ComplexSym half_line_block_backward(const OperatorSpec& spec, const PotentialSample& q,
                                    const SpectralParameter& lam, long n0, long depth) {
    if (depth < 0) throw InvalidParameter("half_line_block_backward: negative depth");
    DenseWindowOperator opr = assemble(spec, q, n0 - depth, n0);
    return dense_green_block(opr, lam, n0);
}

}  // namespace sgreen
