#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include "cutspec/bound_report.hpp"
#include "cutspec/matrix.hpp"

namespace cutspec {

enum class NormKind { square, boxdot };

enum class NormMethod {
    exact,       ///< full enumeration over the smaller dimension
    rank_one,    ///< separable optimum of a numerically rank-one matrix plus a residual bound
    anneal,      ///< restarted local search (lower bound)
    angle_grid,  ///< rotated real-part alternation (lower bound)
};

std::string to_string(NormKind kind);
std::string to_string(NormMethod method);

struct CutNormResult {
    double value = 0.0;  ///< objective recomputed at (x, y)
    IndexSet x;
    IndexSet y;
    Complex witness_sum{};  ///< sum of A[x, y]
    NormKind kind = NormKind::square;
    NormMethod method = NormMethod::exact;
    bool certified = false;
    /// Proven upper bound on the norm; equals value for exact, +inf when unknown.
    double upper_bound = std::numeric_limits<double>::infinity();
};

struct ExactOptions {
    std::size_t exact_limit = 22;
};

struct HeuristicOptions {
    std::uint64_t seed = 0;
    std::size_t restarts = 16;
};

/// |sum A[X,Y]| / (mn) for square, |sum A[X,Y]| / sqrt(|X||Y|) for boxdot
/// (0 when either set is empty).
double norm_objective(const Matrix& a, NormKind kind, const IndexSet& x, const IndexSet& y);

/// Refuses with GuardRefusal when min(m, n) exceeds the exact limit.
CutNormResult cut_norm_exact(const Matrix& a, const ExactOptions& opts = {});
CutNormResult boxdot_norm_exact(const Matrix& a, const ExactOptions& opts = {});
CutNormResult norm_exact(const Matrix& a, NormKind kind, const ExactOptions& opts = {});

/// Certified value for numerically rank-one matrices (sigma_2 <= 1e-12 sigma_1).
/// Throws GuardRefusal when the matrix is not rank one or the gap between the
/// witness value and the residual upper bound exceeds 1e-9 relative.
CutNormResult norm_rank_one(const Matrix& a, NormKind kind);

/// Exact when within the limit, otherwise the rank-one route; refuses if neither applies.
CutNormResult norm_certified(const Matrix& a, NormKind kind, const ExactOptions& opts = {});

CutNormResult cut_norm_heuristic(const Matrix& a, NormKind kind, const HeuristicOptions& opts = {});

/// 720 rotations of the real part by default.
CutNormResult cut_norm_angle_grid(const Matrix& a, NormKind kind, std::size_t angles = 720);

/// Lemma bound |<Ax, y>| <= C ||x||_inf ||y||_inf ||A||_sq m n with C = 4 when
/// A, x and y are all real and C = 16 otherwise. Needs a certified cut-norm.
BoundReport bilinear_form_bound_check(const Matrix& a, std::span<const Complex> x, std::span<const Complex> y,
                                      const CutNormResult& square_norm);

}  // namespace cutspec
