#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgreen/matcore.hpp"

namespace sgreen {

// Outcome of one sampled property check. margin convention: worst observed
// value of (lhs - rhs) / scale, so any positive worst_margin is a violation.
struct PropertyResult {
    std::string name;
    long samples = 0;
    long violations = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();
    std::string counterexample;  // JSON for the first violation, empty otherwise
    double stat = 0.0;           // named auxiliary statistic (measured gamma, C0, ...)
    std::string stat_name;
};

// Isometries, metric axioms, non-expansiveness, strict contraction on
// compacts, resolvent bound, two-step compactness.
std::vector<PropertyResult> verify_siegel(long samples, std::uint64_t seed);

// One-step ratio bound diagnostics: expansion identity, the Cauchy-Schwarz
// inequality a^2 <= 4 cd b, the trace inequality, linearity of a, and the
// ratio bound with the measured C0 over the sample.
std::vector<PropertyResult> verify_lemma25(long samples, std::uint64_t seed);

// The three auxiliary cd inequalities with explicitly computed constants.
std::vector<PropertyResult> verify_appendix_b(long samples, std::uint64_t seed);

// Nested-Phi / Schur identity and resolvent symmetry of dense blocks.
std::vector<PropertyResult> verify_oracle(long samples, std::uint64_t seed);

// Riesz projections, graph subspaces, intertwining, block diagonalization.
std::vector<PropertyResult> verify_blockdecomp(long samples, std::uint64_t seed);

// Dispatch by suite name: siegel | lemma25 | appendixB | oracle | blockdecomp | all.
std::vector<PropertyResult> verify_suite(const std::string& suite, long samples,
                                         std::uint64_t seed);

}  // namespace sgreen
