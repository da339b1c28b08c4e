#pragma once

#include <cstdint>
#include <random>

#include "sgreen/matcore.hpp"
#include "sgreen/siegel.hpp"

namespace sgreen {

// splitmix64 step; the basis of all seed derivation so that per-trial and
// per-site draws are independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic combination of a seed with a stream index (trial, site, ...).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

inline Mat random_gaussian(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = g(rng);
    return M;
}

inline RealSym random_real_sym(int m, std::mt19937_64& rng, double scale = 1.0) {
    Mat A = random_gaussian(m, m, rng, scale);
    return RealSym(0.5 * (A + A.transpose().eval()));
}

// Random Siegel point: X symmetrized Gaussian, Y = A A^T + 0.1 I. The
// additive floor keeps Y safely PD while A A^T still produces
// ill-conditioned imaginary parts.
inline SiegelPoint random_siegel_point(int m, std::mt19937_64& rng, double x_scale = 1.0,
                                       double y_scale = 1.0) {
    Mat X = random_gaussian(m, m, rng, x_scale);
    X = 0.5 * (X + X.transpose().eval());
    Mat A = random_gaussian(m, m, rng, y_scale);
    Mat Y = A * A.transpose() + 0.1 * Mat::Identity(m, m);
    return SiegelPoint(ComplexSym(RealSym(X), RealSym(Y)));
}

}  // namespace sgreen
