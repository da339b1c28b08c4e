#pragma once

#include <utility>

#include "sgreen/matcore.hpp"

namespace sgreen {

// Finite-dimensional H_V = [[H1, V], [V^T, H2]] with partition metadata.
class BlockOperator {
public:
    BlockOperator(RealSym H1, RealSym H2, Mat V);

    int dim1() const { return h1_.dim(); }
    int dim2() const { return h2_.dim(); }
    int dim() const { return dim1() + dim2(); }
    const RealSym& H1() const { return h1_; }
    const RealSym& H2() const { return h2_; }
    const Mat& V() const { return v_; }
    const Mat& assembled() const { return hv_; }    // H_V
    Mat free_part() const;                          // H_0 = diag(H1, H2)
    Mat coupling() const;                           // W = offdiag(V, V^T)
    double v_norm() const { return vnorm_; }
    double spectral_gap() const { return gap_; }    // dist(sigma(H1), sigma(H2))

private:
    RealSym h1_, h2_;
    Mat v_, hv_;
    double vnorm_ = 0.0, gap_ = 0.0;
};

struct ContourSpec {
    enum class Shape { circle, rectangle };
    Shape shape = Shape::circle;
    double center_re = 0.0, center_im = 0.0;
    double radius = 1.0;                       // circle
    double half_width = 1.0, half_height = 1.0;  // rectangle
    int quad_points = 256;
    double gap_tol = 1e-6;  // minimum distance between contour and spectrum
};

// Riesz projection P = (1/2 pi i) \oint dz (z - H)^{-1} by trapezoidal
// quadrature on the parametrized contour, with node doubling until stable.
Mat riesz_projection(const Mat& H, const ContourSpec& c);
inline Mat riesz_projection(const BlockOperator& B, const ContourSpec& c) {
    return riesz_projection(B.assembled(), c);
}

// Graph operators of the invariant subspaces: Q_i = p_j P_i (p_i P_i p_i)^{-1}.
struct GraphOperators {
    Mat Q1;               // dim2 x dim1
    Mat Q2;               // dim1 x dim2
    double cond1 = 0.0;   // condition numbers of the inverted corner blocks
    double cond2 = 0.0;
};

GraphOperators graph_operators(const BlockOperator& B, const Mat& P1);

struct BlockDiagonalization {
    Mat A1, A2;              // diagonal blocks of A with H_V (1+Q) = (1+Q) A
    Mat U;                   // orthogonal factor of the polar decomposition 1+Q
    Mat T1;                  // first diagonal block of U^T H_V U minus H1
    double intertwine_residual = 0.0;
    double offdiag_residual = 0.0;
};

BlockDiagonalization block_diagonalize(const BlockOperator& B, const GraphOperators& Q);

// Spectral truncation of the first block: H1 -> H1 * chi_[a+eps, b-eps](H1).
// Requires sigma(H2) to avoid (a+eps/2, b-eps/2).
BlockOperator denisov_split(const BlockOperator& B, double a, double b, double epsilon);

}  // namespace sgreen
