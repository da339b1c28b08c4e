#include "sgreen/blockdecomp.hpp"

#include <Eigen/LU>
#include <array>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

namespace sgreen {

BlockOperator::BlockOperator(RealSym H1, RealSym H2, Mat V)
    : h1_(std::move(H1)), h2_(std::move(H2)), v_(std::move(V)) {
    if (v_.rows() != h1_.dim() || v_.cols() != h2_.dim())
        throw DimensionMismatch("BlockOperator: V must be dim1 x dim2");
    const int d1 = h1_.dim(), d2 = h2_.dim();
    hv_ = Mat::Zero(d1 + d2, d1 + d2);
    hv_.topLeftCorner(d1, d1) = h1_.mat();
    hv_.bottomRightCorner(d2, d2) = h2_.mat();
    hv_.topRightCorner(d1, d2) = v_;
    hv_.bottomLeftCorner(d2, d1) = v_.transpose();
    vnorm_ = op_norm(v_);
    auto [w1, V1] = sym_eig(h1_.mat());
    auto [w2, V2] = sym_eig(h2_.mat());
    gap_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) gap_ = std::min(gap_, std::abs(w1(i) - w2(j)));
}

Mat BlockOperator::free_part() const {
    Mat H0 = hv_;
    H0.topRightCorner(dim1(), dim2()).setZero();
    H0.bottomLeftCorner(dim2(), dim1()).setZero();
    return H0;
}

Mat BlockOperator::coupling() const { return hv_ - free_part(); }

namespace {

// contour point and tangent at parameter s in [0,1)
std::pair<Complex, Complex> contour_point(const ContourSpec& c, double s) {
    if (c.shape == ContourSpec::Shape::circle) {
        const double th = 2.0 * M_PI * s;
        const Complex e(std::cos(th), std::sin(th));
        return {Complex(c.center_re, c.center_im) + c.radius * e,
                2.0 * M_PI * c.radius * Complex(0, 1) * e};
    }
    // rectangle traversed counter-clockwise, perimeter-proportional speed
    const double w = 2.0 * c.half_width, h = 2.0 * c.half_height;
    const double per = 2.0 * (w + h);
    double u = s * per;
    const Complex c0(c.center_re, c.center_im);
    if (u < w) return {c0 + Complex(-c.half_width + u, -c.half_height), Complex(per, 0)};
    u -= w;
    if (u < h) return {c0 + Complex(c.half_width, -c.half_height + u), Complex(0, per)};
    u -= h;
    if (u < w) return {c0 + Complex(c.half_width - u, c.half_height), Complex(-per, 0)};
    u -= w;
    return {c0 + Complex(-c.half_width, c.half_height - u), Complex(0, -per)};
}

double contour_distance(const ContourSpec& c, double ev) {
    if (c.shape == ContourSpec::Shape::circle) {
        const double d = std::hypot(ev - c.center_re, c.center_im);
        return std::abs(d - c.radius);
    }
    // distance from a real eigenvalue to the rectangle boundary
    const double dx = std::abs(ev - c.center_re) - c.half_width;
    const double dy = std::abs(0.0 - c.center_im) - c.half_height;
    if (dx <= 0 && dy <= 0) return std::min(-dx, -dy);
    return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

CMat resolvent(const Mat& H, Complex z) {
    const long n = H.rows();
    CMat A = z * CMat::Identity(n, n) - H.cast<Complex>();
    Eigen::PartialPivLU<CMat> lu(std::move(A));
    return lu.solve(CMat::Identity(n, n));
}

// 16-point Gauss-Legendre rule on [-1, 1], nodes by Newton on P_16
const std::array<std::pair<double, double>, 16>& gl16() {
    static const std::array<std::pair<double, double>, 16> rule = [] {
        std::array<std::pair<double, double>, 16> r{};
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return r;
    }();
    return rule;
}

// Circle: trapezoid (spectrally accurate for periodic analytic integrands).
// Rectangle: per-edge composite Gauss-Legendre; the trapezoid loses its
// exponential convergence at the corners.
CMat resolvent_quadrature(const Mat& H, const ContourSpec& c, int nodes) {
    const long n = H.rows();
    CMat acc = CMat::Zero(n, n);
    if (c.shape == ContourSpec::Shape::circle) {
        for (int k = 0; k < nodes; ++k) {
            const double s = static_cast<double>(k) / nodes;
            auto [z, dz] = contour_point(c, s);
            acc += resolvent(H, z) * dz;
        }
        return acc / (Complex(0, 2.0 * M_PI) * static_cast<double>(nodes));
    }
    const Complex c0(c.center_re, c.center_im);
    const Complex corners[5] = {c0 + Complex(-c.half_width, -c.half_height),
                                c0 + Complex(c.half_width, -c.half_height),
                                c0 + Complex(c.half_width, c.half_height),
                                c0 + Complex(-c.half_width, c.half_height),
                                c0 + Complex(-c.half_width, -c.half_height)};
    const int panels = std::max(1, nodes / 64);
    for (int e = 0; e < 4; ++e) {
        const Complex z0 = corners[e], z1 = corners[e + 1];
        for (int p = 0; p < panels; ++p) {
            const Complex a = z0 + (z1 - z0) * (static_cast<double>(p) / panels);
            const Complex b = z0 + (z1 - z0) * (static_cast<double>(p + 1) / panels);
            const Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (const auto& [x, w] : gl16()) acc += resolvent(H, mid + x * half) * (w * half);
        }
    }
    return acc / Complex(0, 2.0 * M_PI);
}

}  // namespace

Mat riesz_projection(const Mat& H, const ContourSpec& c) {
    auto [w, V] = sym_eig(H);
    for (int i = 0; i < w.size(); ++i)
        if (contour_distance(c, w(i)) < c.gap_tol)
            throw EigenvalueOnContour("riesz_projection: eigenvalue " + std::to_string(w(i)) +
                                      " within gap_tol of the contour");
    int nodes = std::max(8, c.quad_points);
    CMat P = resolvent_quadrature(H, c, nodes);
    constexpr int kMaxNodes = 1 << 16;
    while (true) {
        if (2 * nodes > kMaxNodes)
            throw QuadratureNotConverged("riesz_projection: node doubling did not stabilize");
        CMat P2 = resolvent_quadrature(H, c, 2 * nodes);
        const double change = (P2 - P).norm();
        P = std::move(P2);
        nodes *= 2;
        if (change <= 1e-9) break;
    }
    if (P.imag().norm() > 1e-10 * std::max(P.norm(), 1.0))
        throw QuadratureNotConverged("riesz_projection: imaginary residue too large");
    return P.real();
}

GraphOperators graph_operators(const BlockOperator& B, const Mat& P1) {
    const int d1 = B.dim1(), d2 = B.dim2();
    if (P1.rows() != d1 + d2 || P1.cols() != d1 + d2)
        throw DimensionMismatch("graph_operators: projection size mismatch");
    if (B.v_norm() > B.spectral_gap() / 8.0)
        throw NotAGraph("graph_operators: ||V|| exceeds gap/8, perturbation too large");
    const Mat P2 = Mat::Identity(d1 + d2, d1 + d2) - P1;

    auto corner_inverse = [](const Mat& blk, double& cond) {
        Eigen::JacobiSVD<Mat> svd(blk, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        const double smax = svd.singularValues()(0);
        if (smin < 1e-8 * std::max(smax, 1.0))
            throw NotAGraph("graph_operators: p_i P_i p_i numerically singular");
        cond = smax / smin;
        Mat inv = svd.solve(Mat::Identity(blk.rows(), blk.cols()));
        return inv;
    };

    GraphOperators g;
    g.Q1 = P1.bottomLeftCorner(d2, d1) * corner_inverse(P1.topLeftCorner(d1, d1), g.cond1);
    g.Q2 = P2.topRightCorner(d1, d2) * corner_inverse(P2.bottomRightCorner(d2, d2), g.cond2);
    return g;
}

BlockDiagonalization block_diagonalize(const BlockOperator& B, const GraphOperators& Q) {
    const int d1 = B.dim1(), d2 = B.dim2();
    BlockDiagonalization r;
    r.A1 = B.H1().mat() + B.V() * Q.Q1;
    r.A2 = B.H2().mat() + B.V().transpose() * Q.Q2;

    Mat oneQ = Mat::Identity(d1 + d2, d1 + d2);
    oneQ.topRightCorner(d1, d2) = Q.Q2;
    oneQ.bottomLeftCorner(d2, d1) = Q.Q1;
    Mat A = Mat::Zero(d1 + d2, d1 + d2);
    A.topLeftCorner(d1, d1) = r.A1;
    A.bottomRightCorner(d2, d2) = r.A2;
    r.intertwine_residual = (B.assembled() * oneQ - oneQ * A).norm();

    // polar decomposition 1 + Q = U |1 + Q|, |1 + Q| = ((1+Q)^T (1+Q))^{1/2}
    const Mat gram = oneQ.transpose() * oneQ;
    auto [w, Vg] = sym_eig(gram);
    Vec winv_sqrt = w.array().rsqrt();
    const Mat absQ_inv = Vg * winv_sqrt.asDiagonal() * Vg.transpose();
    r.U = oneQ * absQ_inv;

    const Mat conj = r.U.transpose() * B.assembled() * r.U;
    r.offdiag_residual = conj.topRightCorner(d1, d2).norm();
    r.T1 = conj.topLeftCorner(d1, d1) - B.H1().mat();
    return r;
}

BlockOperator denisov_split(const BlockOperator& B, double a, double b, double epsilon) {
    if (!(a < b) || epsilon <= 0) throw InvalidParameter("denisov_split: need a < b, epsilon > 0");
    auto [w2, V2] = sym_eig(B.H2().mat());
    for (int i = 0; i < w2.size(); ++i)
        if (w2(i) > a + epsilon / 2 && w2(i) < b - epsilon / 2)
            throw GapViolation("denisov_split: sigma(H2) intersects (a+eps/2, b-eps/2)");
    auto [w1, V1] = sym_eig(B.H1().mat());
    Vec trunc = w1;
    for (int i = 0; i < w1.size(); ++i)
        if (w1(i) < a + epsilon || w1(i) > b - epsilon) trunc(i) = 0.0;
    Mat H1hat = V1 * trunc.asDiagonal() * V1.transpose();
    return BlockOperator(RealSym(std::move(H1hat)), B.H2(), B.V());
}

}  // namespace sgreen
