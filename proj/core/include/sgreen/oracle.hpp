#pragma once

#include "sgreen/model.hpp"
#include "sgreen/siegel.hpp"

namespace sgreen {

// Dense finite-window Hamiltonian with Dirichlet boundaries: ground truth for
// cross-validating the recursion. Block layout is site-major, block size m.
class DenseWindowOperator {
public:
    DenseWindowOperator(long n_min, long n_max, int m, Mat H);

    long n_min() const { return n_min_; }
    long n_max() const { return n_max_; }
    long width() const { return n_max_ - n_min_ + 1; }
    int channels() const { return m_; }
    const Mat& matrix() const { return h_; }
    long block_index(long n) const;

private:
    long n_min_, n_max_;
    int m_;
    Mat h_;
};

// Window restriction of H = Delta + D + q; off-diagonal blocks -I between
// adjacent sites, diagonal blocks D + q_n. Caps at 8192 total dimension.
DenseWindowOperator assemble(const OperatorSpec& spec, const PotentialSample& q, long n_min,
                             long n_max);

// The m x m diagonal block of (H - lambda)^{-1} at site n, by direct solve.
ComplexSym dense_green_block(const DenseWindowOperator& opr, const SpectralParameter& lam, long n);

// Exact finite half-line forward block: window [n0, n0+depth] with a
// Dirichlet cut, block at n0. Equals the nested Phi composition terminated at
// the single-site resolvent (Schur complement identity).
ComplexSym half_line_block(const OperatorSpec& spec, const PotentialSample& q,
                           const SpectralParameter& lam, long n0, long depth);

// Mirror of half_line_block over sites n0, n0-1, ..., n0-depth.
ComplexSym half_line_block_backward(const OperatorSpec& spec, const PotentialSample& q,
                                    const SpectralParameter& lam, long n0, long depth);

}  // namespace sgreen
