#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgreen/matcore.hpp"

namespace sgreen {

// Channel matrix D with cached eigendecomposition.
class OperatorSpec {
public:
    explicit OperatorSpec(RealSym D);

    int channels() const { return D_.dim(); }
    const RealSym& D() const { return D_; }
    const Vec& eigenvalues() const { return mu_; }
    const Mat& eigenvectors() const { return V_; }

private:
    RealSym D_;
    Vec mu_;  // ascending
    Mat V_;
};

// Dirichlet Laplacian on the cube {1..L}^d; m = L^d capped at 64.
OperatorSpec strip_dirichlet(int L, int d);
// Closed-form eigenvalues -2 sum_i cos(pi n_i/(L+1)), sorted ascending.
std::vector<double> strip_dirichlet_eigenvalues(int L, int d);

struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool strictly_contains(double x) const { return lo < x && x < hi; }
};

// Band geometry of Delta + D: the common window I_D, the free spectrum, and
// the interval decomposition carrying the locally constant mode count m(lambda).
struct BandReport {
    std::optional<Interval> I_D;                 // empty when channels cannot overlap
    std::vector<Interval> sigma_free;            // disjoint, ascending
    std::vector<double> breakpoints;             // sorted mu_k +- 2
    struct Piece {
        Interval interval;
        int mode_count = 0;                      // m(lambda) on the open interval
        std::vector<int> channels;               // {k : interval inside (mu_k-2, mu_k+2)}
    };
    std::vector<Piece> pieces;                   // partition of sigma_free, zero-length dropped
};

BandReport band_report(const OperatorSpec& spec);

enum class DisorderKind { rademacher, uniform, truncated_gaussian, diagonal_iid };

DisorderKind disorder_kind_from_string(const std::string& s);
std::string to_string(DisorderKind k);

// Product-measure site disorder: site n draws a mean-zero symmetric matrix of
// norm at most c (1+|n|)^{-alpha}. Scalar-amplitude kinds scale a fixed unit
// direction matrix; diagonal_iid draws each diagonal entry independently.
struct DisorderModel {
    DisorderKind kind = DisorderKind::rademacher;
    int m = 1;
    RealSym direction;    // unit operator norm; ignored by diagonal_iid
    double amplitude = 0.0;
    double alpha = 0.0;   // envelope exponent

    DisorderModel() : direction(RealSym::Identity(1)) {}
    DisorderModel(DisorderKind k, int channels, double c, double decay_alpha);
    DisorderModel(DisorderKind k, RealSym dir, double c, double decay_alpha);

    double envelope(long n) const;                  // c (1+|n|)^{-alpha}
    double support_bound() const { return amplitude; }
    RealSym draw_site(std::uint64_t master_seed, long n) const;
    // E[||q_n||^2] for a single site, closed form (numerically integrated
    // second moment for the truncated Gaussian).
    double site_second_moment(long n) const;
};

// Finite-window realization of q; zero outside [n_min, n_max].
class PotentialSample {
public:
    PotentialSample(long n_min, long n_max, int m) : n_min_(n_min), n_max_(n_max), zero_(RealSym::Zero(m)) {
        if (n_min > n_max) throw InvalidParameter("PotentialSample: empty range");
        values_.resize(static_cast<std::size_t>(n_max - n_min + 1), zero_);
    }
    long n_min() const { return n_min_; }
    long n_max() const { return n_max_; }
    int channels() const { return zero_.dim(); }
    // zero outside the sampled window
    const RealSym& at(long n) const {
        if (n < n_min_ || n > n_max_) return zero_;
        return values_[static_cast<std::size_t>(n - n_min_)];
    }
    void set(long n, RealSym v) { values_.at(static_cast<std::size_t>(n - n_min_)) = std::move(v); }

private:
    long n_min_, n_max_;
    RealSym zero_;
    std::vector<RealSym> values_;
};

// Site n's draw depends only on (master_seed, n): enlarging the window never
// changes existing sites.
PotentialSample sample_potential(const DisorderModel& model, std::uint64_t master_seed,
                                 long n_min, long n_max);

// sum_n E[||q_n||^2] over the window.
double second_moment_sum(const DisorderModel& model, long n_min, long n_max);

}  // namespace sgreen
