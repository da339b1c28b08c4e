#include "sgreen/model.hpp"

#include <algorithm>
#include <cmath>

#include "sgreen/random.hpp"

namespace sgreen {

OperatorSpec::OperatorSpec(RealSym D) : D_(std::move(D)) {
    auto [w, V] = sym_eig(D_.mat());
    if ((V * w.asDiagonal() * V.transpose() - D_.mat()).norm() >
        1e-12 * std::max(D_.mat().norm(), 1.0))
        throw InvariantBreach("OperatorSpec: eigendecomposition reconstruction failed");
    mu_ = std::move(w);
    V_ = std::move(V);
}

std::vector<double> strip_dirichlet_eigenvalues(int L, int d) {
    std::vector<double> out;
    std::vector<int> idx(static_cast<std::size_t>(d), 1);
    const double denom = M_PI / (L + 1);
    while (true) {
        double e = 0.0;
        for (int i = 0; i < d; ++i) e += -2.0 * std::cos(denom * idx[static_cast<std::size_t>(i)]);
        out.push_back(e);
        int p = 0;
        while (p < d && ++idx[static_cast<std::size_t>(p)] > L) idx[static_cast<std::size_t>(p++)] = 1;
        if (p == d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

OperatorSpec strip_dirichlet(int L, int d) {
    if (L < 1 || d < 1) throw InvalidParameter("strip_dirichlet: L and d must be >= 1");
    double mf = std::pow(static_cast<double>(L), d);
    if (mf > 64.0) throw SizeCap("strip_dirichlet: L^d exceeds dense-size cap 64");
    const int m = static_cast<int>(std::lround(mf));

    // site-major index over {1..L}^d, coordinate 0 fastest
    auto flat = [&](const std::vector<int>& c) {
        int f = 0;
        for (int i = d - 1; i >= 0; --i) f = f * L + (c[static_cast<std::size_t>(i)] - 1);
        return f;
    };
    Mat D = Mat::Zero(m, m);
    std::vector<int> c(static_cast<std::size_t>(d), 1);
    while (true) {
        const int row = flat(c);
        for (int i = 0; i < d; ++i) {
            for (int s : {-1, +1}) {
                auto cn = c;
                cn[static_cast<std::size_t>(i)] += s;
                if (cn[static_cast<std::size_t>(i)] >= 1 && cn[static_cast<std::size_t>(i)] <= L)
                    D(row, flat(cn)) = -1.0;
            }
        }
        int p = 0;
        while (p < d && ++c[static_cast<std::size_t>(p)] > L) c[static_cast<std::size_t>(p++)] = 1;
        if (p == d) break;
    }
    return OperatorSpec(RealSym(std::move(D)));
}

BandReport band_report(const OperatorSpec& spec) {
    const Vec& mu = spec.eigenvalues();
    const int m = spec.channels();
    BandReport rep;

    const double lo = mu(m - 1) - 2.0, hi = mu(0) + 2.0;
    // A window that is degenerate up to roundoff has empty interior.
    const double tol = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    if (hi - lo > tol) rep.I_D = Interval{lo, hi};

    std::vector<double> bp;
    for (int k = 0; k < m; ++k) {
        bp.push_back(mu(k) - 2.0);
        bp.push_back(mu(k) + 2.0);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             bp.end());
    rep.breakpoints = bp;

    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        Interval iv{bp[i], bp[i + 1]};
        if (iv.length() <= 1e-14) continue;  // zero-length pieces dropped
        const double mid = 0.5 * (iv.lo + iv.hi);
        BandReport::Piece piece;
        piece.interval = iv;
        for (int k = 0; k < m; ++k)
            if (std::abs(mid - mu(k)) < 2.0) piece.channels.push_back(k);
        piece.mode_count = static_cast<int>(piece.channels.size());
        if (piece.mode_count > 0) rep.pieces.push_back(std::move(piece));
    }

    // merge adjacent pieces into the disjoint free-spectrum components
    for (const auto& piece : rep.pieces) {
        if (!rep.sigma_free.empty() && std::abs(rep.sigma_free.back().hi - piece.interval.lo) < 1e-12)
            rep.sigma_free.back().hi = piece.interval.hi;
        else
            rep.sigma_free.push_back(piece.interval);
    }
    return rep;
}

DisorderKind disorder_kind_from_string(const std::string& s) {
    if (s == "rademacher") return DisorderKind::rademacher;
    if (s == "uniform") return DisorderKind::uniform;
    if (s == "truncated_gaussian") return DisorderKind::truncated_gaussian;
    if (s == "diagonal_iid") return DisorderKind::diagonal_iid;
    throw InvalidParameter("unknown disorder kind: " + s);
}

std::string to_string(DisorderKind k) {
    switch (k) {
        case DisorderKind::rademacher: return "rademacher";
        case DisorderKind::uniform: return "uniform";
        case DisorderKind::truncated_gaussian: return "truncated_gaussian";
        case DisorderKind::diagonal_iid: return "diagonal_iid";
    }
    return "?";
}

DisorderModel::DisorderModel(DisorderKind k, int channels, double c, double decay_alpha)
    : kind(k), m(channels), direction(RealSym::Identity(channels)), amplitude(c), alpha(decay_alpha) {
    if (c < 0 || decay_alpha < 0) throw InvalidParameter("DisorderModel: negative amplitude or alpha");
}

DisorderModel::DisorderModel(DisorderKind k, RealSym dir, double c, double decay_alpha)
    : kind(k), m(dir.dim()), direction(std::move(dir)), amplitude(c), alpha(decay_alpha) {
    if (c < 0 || decay_alpha < 0) throw InvalidParameter("DisorderModel: negative amplitude or alpha");
    const double nrm = op_norm(direction.mat());
    if (std::abs(nrm - 1.0) > 1e-9)
        throw InvalidParameter("DisorderModel: direction must have unit operator norm");
}

double DisorderModel::envelope(long n) const {
    return amplitude * std::pow(1.0 + static_cast<double>(std::llabs(n)), -alpha);
}

namespace {

constexpr double kGaussTrunc = 3.0;  // standard normal truncated to [-3, 3], rescaled to [-1, 1]

double truncated_gaussian_unit_second_moment() {
    // E[(xi/3)^2 | |xi| <= 3], xi ~ N(0,1), by Simpson on [-3, 3]
    static const double cached = [] {
        const int n = 2000;  // even
        const double h = 2.0 * kGaussTrunc / n;
        auto f = [](double t) { return std::exp(-0.5 * t * t); };
        double mass = 0.0, second = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = -kGaussTrunc + i * h;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            mass += w * f(t);
            second += w * t * t * f(t);
        }
        return second / mass / (kGaussTrunc * kGaussTrunc);
    }();
    return cached;
}

double draw_unit_scalar(DisorderKind kind, std::mt19937_64& rng) {
    switch (kind) {
        case DisorderKind::rademacher:
            return (rng() & 1ULL) ? 1.0 : -1.0;
        case DisorderKind::uniform: {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            return u(rng);
        }
        case DisorderKind::truncated_gaussian: {
            std::normal_distribution<double> g(0.0, 1.0);
            double x;
            do { x = g(rng); } while (std::abs(x) > kGaussTrunc);
            return x / kGaussTrunc;
        }
        case DisorderKind::diagonal_iid:
            break;
    }
    throw InvalidParameter("draw_unit_scalar: not a scalar-amplitude kind");
}

}  // namespace

RealSym DisorderModel::draw_site(std::uint64_t master_seed, long n) const {
    auto rng = make_rng(mix_seed(master_seed, static_cast<std::uint64_t>(n)));
    const double cn = envelope(n);
    if (cn == 0.0) return RealSym::Zero(m);
    if (kind == DisorderKind::diagonal_iid) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Mat q = Mat::Zero(m, m);
        for (int i = 0; i < m; ++i) q(i, i) = cn * u(rng);
        return RealSym(std::move(q));
    }
    return RealSym(Mat(cn * draw_unit_scalar(kind, rng) * direction.mat()));
}

double DisorderModel::site_second_moment(long n) const {
    const double cn = envelope(n);
    switch (kind) {
        case DisorderKind::rademacher: return cn * cn;
        case DisorderKind::uniform: return cn * cn / 3.0;
        case DisorderKind::truncated_gaussian:
            return cn * cn * truncated_gaussian_unit_second_moment();
        case DisorderKind::diagonal_iid:
            // ||q|| = max_i |d_i| with d_i/c_n iid U(-1,1); E[max^2] = m/(m+2)
            return cn * cn * m / (m + 2.0);
    }
    return 0.0;
}

PotentialSample sample_potential(const DisorderModel& model, std::uint64_t master_seed,
                                 long n_min, long n_max) {
    PotentialSample s(n_min, n_max, model.m);
    for (long n = n_min; n <= n_max; ++n) s.set(n, model.draw_site(master_seed, n));
    return s;
}

double second_moment_sum(const DisorderModel& model, long n_min, long n_max) {
    double sum = 0.0;
    for (long n = n_min; n <= n_max; ++n) sum += model.site_second_moment(n);
    return sum;
}

}  // namespace sgreen
