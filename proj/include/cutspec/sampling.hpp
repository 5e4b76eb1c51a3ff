#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cutspec/bound_report.hpp"
#include "cutspec/matrix.hpp"
#include "cutspec/rng.hpp"

namespace cutspec {

/// Uniform k-subset of [0, n) by a partial Fisher-Yates shuffle.
IndexSet sample_subset(std::size_t n, std::size_t k, Rng& rng);

struct PrincipalSample {
    IndexSet x;
    Matrix b;
};

/// A[X, X] for a uniform k-subset X drawn from make_rng(seed, 0).
PrincipalSample sample_principal(const Matrix& a, std::size_t k, std::uint64_t seed);

/// mu_i(A) >= mu_i(B) >= mu_{n-k+i}(A) for i = 1..k with tolerance 1e-9 ||A||_F.
/// lhs is the largest violation (<= 0 when interlacing is strict). Throws
/// PreconditionError unless B is exactly A[X, X].
BoundReport check_interlacing(const Matrix& a, const Matrix& b, const IndexSet& x);

struct Deviation {
    std::size_t i = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string clause;  ///< "i" when mu_i(B) >= 0, "ii" (tail index of A) otherwise
};

struct SamplingTrial {
    std::uint64_t seed = 0;  ///< replays the trial through sample_principal
    IndexSet x;
    std::vector<Deviation> deviations;
    double max_deviation = 0.0;
    bool within_bound = false;
    bool interlacing_ok = false;
};

struct SsampReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double rescale_factor = 1.0;
    double bound = 0.0;           ///< 30 (log2 k)^{-1/4}
    double deviation_cap = 2.0;   ///< a-priori range of every deviation when |A|_inf <= 1
    bool vacuous = false;         ///< bound > deviation_cap
    double max_deviation = 0.0;
    double fraction_within = 0.0;
    double interlacing_pass_rate = 0.0;
    double sampling_distance_bound = 0.0;  ///< 10 (log2 k)^{-1/2}, stated but not evaluated
    std::vector<SamplingTrial> per_trial;
};

/// Runs the principal-submatrix experiment on a real symmetric A, rescaled so
/// that |A|_inf <= 1. Trial t uses seed derive_seed(seed, t).
SsampReport run_ssamp_experiment(const Matrix& a, std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace cutspec
