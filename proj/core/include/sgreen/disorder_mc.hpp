#pragma once

#include <cstdint>
#include <vector>

#include "sgreen/green.hpp"
#include "sgreen/model.hpp"

namespace sgreen {

// Seeded Monte Carlo estimate of E[cd_lambda^2(G_0^+)] on a (x, eps) grid.
// J must be a closed interval inside the interior of I_D.
struct Experiment {
    OperatorSpec spec;
    DisorderModel model;
    Interval J;
    std::vector<double> x_grid;    // energies in J
    std::vector<double> eps_grid;  // values in (0, 1]
    int trials = 0;
    std::uint64_t master_seed = 0;
    long window_min = 0, window_max = 0;  // potential sample range
    EngineConfig cfg;
    int jobs = 1;
};

struct MCCell {
    double x = 0.0, eps = 0.0;
    double mean = 0.0, variance = 0.0, max = 0.0;
    int trials_used = 0;
    int failures = 0;
};

struct MCReport {
    std::vector<MCCell> cells;      // row-major over (x, eps)
    double sum_second_moments = 0;  // sum_n E||q_n||^2 over the window
    int total_failures = 0;
    bool failure_rate_exceeded = false;  // > 1% failed trials invalidates the run
};

// Deterministic given master_seed: trial t uses seed mix(master_seed, t) and
// results are reduced in fixed trial order regardless of the job count.
MCReport run(const Experiment& exp);

struct ProductBound {
    double product = 1.0;      // prod_n (1 + C0 E||q_n||^2)
    double exponential = 1.0;  // exp(C0 sum_n E||q_n||^2)
};

ProductBound product_bound(const Experiment& exp, double C0);

// Empirical |mean of A(Z, q_0)| over draws at a fixed random Z; O(sd/sqrt(T))
// for a mean-zero model.
double zero_mean_check(const OperatorSpec& spec, const DisorderModel& model,
                       const SpectralParameter& lam, int trials, std::uint64_t seed);

}  // namespace sgreen
