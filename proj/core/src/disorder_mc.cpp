#include "sgreen/disorder_mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "sgreen/random.hpp"

namespace sgreen {

namespace {

void validate(const Experiment& exp) {
    BandReport band = band_report(exp.spec);
    if (!band.I_D)
        throw InvalidParameter("Experiment: I_D is empty, no admissible J exists");
    if (exp.J.lo > exp.J.hi || exp.J.lo < band.I_D->lo + 1e-6 || exp.J.hi > band.I_D->hi - 1e-6)
        throw InvalidParameter("Experiment: J must lie inside the interior of I_D with margin");
    for (double x : exp.x_grid)
        if (!exp.J.contains(x)) throw InvalidParameter("Experiment: x_grid point outside J");
    for (double e : exp.eps_grid)
        if (!(e > 0.0 && e <= 1.0)) throw InvalidParameter("Experiment: eps_grid outside (0,1]");
    if (exp.trials < 0) throw InvalidParameter("Experiment: negative trial count");
    if (exp.window_min > exp.window_max) throw InvalidParameter("Experiment: empty window");
}

}  // namespace

MCReport run(const Experiment& exp) {
    validate(exp);
    const std::size_t ncells = exp.x_grid.size() * exp.eps_grid.size();
    const int T = exp.trials;

    // per-trial results; NaN marks a failed (non-convergent) trial
    std::vector<std::vector<double>> values(static_cast<std::size_t>(T),
                                            std::vector<double>(ncells, 0.0));
    std::atomic<long> next{0};
    const int jobs = std::max(1, exp.jobs);

    auto worker = [&] {
        while (true) {
            const long t = next.fetch_add(1);
            if (t >= T) break;
            const PotentialSample q = sample_potential(
                exp.model, mix_seed(exp.master_seed, static_cast<std::uint64_t>(t)),
                exp.window_min, exp.window_max);
            std::size_t c = 0;
            for (double x : exp.x_grid) {
                for (double eps : exp.eps_grid) {
                    const SpectralParameter lam{x, eps};
                    double v;
                    try {
                        GreenResult g = forward_green(exp.spec, q, lam, 0, exp.cfg);
                        const double cdl = cd_lambda(g.value, lam, exp.spec.D());
                        v = cdl * cdl;
                    } catch (const NoConvergence&) {
                        v = std::nan("");
                    }
                    values[static_cast<std::size_t>(t)][c++] = v;
                }
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    MCReport rep;
    rep.sum_second_moments = second_moment_sum(exp.model, exp.window_min, exp.window_max);
    std::size_t c = 0;
    for (double x : exp.x_grid) {
        for (double eps : exp.eps_grid) {
            MCCell cell;
            cell.x = x;
            cell.eps = eps;
            // fixed trial-index order keeps the reduction bit-reproducible
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < T; ++t) {
                const double v = values[static_cast<std::size_t>(t)][c];
                if (std::isnan(v)) {
                    ++cell.failures;
                    continue;
                }
                ++cell.trials_used;
                sum += v;
                sumsq += v * v;
                if (v > cell.max) cell.max = v;
            }
            if (cell.trials_used > 0) {
                cell.mean = sum / cell.trials_used;
                cell.variance = std::max(0.0, sumsq / cell.trials_used - cell.mean * cell.mean);
            }
            rep.total_failures += cell.failures;
            rep.cells.push_back(cell);
            ++c;
        }
    }
    const long attempts = static_cast<long>(T) * static_cast<long>(ncells);
    if (attempts > 0 && rep.total_failures > 0.01 * static_cast<double>(attempts))
        rep.failure_rate_exceeded = true;
    return rep;
}

ProductBound product_bound(const Experiment& exp, double C0) {
    if (!(C0 > 0)) throw InvalidParameter("product_bound: C0 must be positive");
    ProductBound b;
    double sum = 0.0;
    for (long n = exp.window_min; n <= exp.window_max; ++n) {
        const double m2 = exp.model.site_second_moment(n);
        b.product *= 1.0 + C0 * m2;
        sum += m2;
    }
    b.exponential = std::exp(C0 * sum);
    return b;
}

double zero_mean_check(const OperatorSpec& spec, const DisorderModel& model,
                       const SpectralParameter& lam, int trials, std::uint64_t seed) {
    lam.require_upper();
    auto rng = make_rng(mix_seed(seed, 0xA11CE));
    const SiegelPoint Z = random_siegel_point(spec.channels(), rng);
    if (trials <= 0) return 0.0;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        const RealSym q0 = model.draw_site(mix_seed(seed, static_cast<std::uint64_t>(t)), 0);
        sum += lemma25_report(Z, q0, lam, spec.D()).A;
    }
    return std::abs(sum / trials);
}

}  // namespace sgreen
