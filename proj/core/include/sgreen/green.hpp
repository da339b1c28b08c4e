#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sgreen/model.hpp"
#include "sgreen/siegel.hpp"

namespace sgreen {

enum class GreenKind { forward, backward, diagonal };

struct EngineConfig {
    double tol = 1e-10;
    long max_depth = 1000000;
    long depth_step = 32;
    // Optional replacement for the default seed pair (Z_lambda, iI). Custom
    // seeds disable the closed-form free-tail fast path.
    std::optional<std::pair<ComplexSym, ComplexSym>> seeds;
};

struct GreenResult {
    SiegelPoint value;
    long site = 0;
    GreenKind kind = GreenKind::forward;
    long depth_used = 0;
    double residual = 0.0;   // hyperbolic distance between the two seed runs
    double gamma_hat = 0.0;  // measured contraction factor per step
};

// G_{n0}^+ as the limit of nested Phi compositions, two-seed convergence
// control: both runs are iterated from depth n0+d down to n0 and the engine
// stops when their hyperbolic distance drops below tol.
GreenResult forward_green(const OperatorSpec& spec, const PotentialSample& q,
                          const SpectralParameter& lam, long n0, const EngineConfig& cfg = {});

// Mirror recursion over sites n0, n0-1, ...
GreenResult backward_green(const OperatorSpec& spec, const PotentialSample& q,
                           const SpectralParameter& lam, long n0, const EngineConfig& cfg = {});

// G_n = -(G_{n+1}^+ + G_{n-1}^- + lambda - D - q_n)^{-1}.
GreenResult diagonal_green(const OperatorSpec& spec, const PotentialSample& q,
                           const SpectralParameter& lam, long n, const EngineConfig& cfg = {});

// (1/(m pi)) tr Im G_n(x + i eps).
double local_dos(const OperatorSpec& spec, const PotentialSample& q, double x, double eps, long n,
                 const EngineConfig& cfg = {});

struct DosRow {
    double x = 0.0, eps = 0.0, dos = 0.0;
};

std::vector<DosRow> dos_curve(const OperatorSpec& spec, const PotentialSample& q,
                              const std::vector<double>& x_grid, const std::vector<double>& eps_list,
                              long n, const EngineConfig& cfg = {});

// k iterations of the scalar free map z -> -1/(z + lambda - mu) in closed
// form (matrix power of the associated 2x2 Moebius matrix).
Complex free_iterate_scalar(Complex z0, Complex lambda, double mu, long k);

}  // namespace sgreen
