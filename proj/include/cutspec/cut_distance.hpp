#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutspec/matrix.hpp"

namespace cutspec {

/// Bijection on [0, n). Applied to B as (PBQ)(i, j) = B(P[i], Q[j]).
class Permutation {
public:
    Permutation() = default;
    /// Throws PreconditionError unless map is a bijection.
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return map_[i]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }
    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::size_t> map_;
};

enum class DistanceKind { square, boxminus };

enum class DistanceMethod {
    automatic,  ///< exact when the overlay-table count is within the guard, else anneal
    exact,
    anneal,
};

enum class BoundKind {
    exact_at_k,   ///< the minimum over all permutations at this size
    upper_bound,  ///< a feasible permutation scored by an exact cut-norm
    heuristic,    ///< feasible permutation but its cut-norm is only a lower bound
};

std::string to_string(DistanceKind kind);
std::string to_string(DistanceMethod method);
std::string to_string(BoundKind kind);

struct DistanceResult {
    double value = 0.0;  ///< cut-norm of A - PBQ recomputed at the witness
    Permutation perm_P;
    std::optional<Permutation> perm_Q;  ///< boxminus only
    std::size_t blowup_k = 1;
    DistanceKind kind = DistanceKind::square;
    DistanceMethod method = DistanceMethod::exact;  ///< exact or anneal, never automatic
    BoundKind bound_kind = BoundKind::exact_at_k;
    std::size_t rows = 0;  ///< size of the compared matrices
    std::size_t cols = 0;
    std::size_t tables = 0;  ///< overlay tables visited (exact) or proposals made (anneal)
};

struct DistanceOptions {
    DistanceMethod method = DistanceMethod::automatic;
    std::uint64_t seed = 0;
    std::size_t restarts = 4;
    /// Annealing proposals per restart; 0 means 200 * rows * cols.
    std::size_t proposals = 0;
    /// Exact search refuses above this many overlay tables; 0 picks the
    /// default of 9! for square and 10^7 for boxminus.
    std::size_t table_limit = 0;
    /// Largest number of overlay cells whose cut-norm is scored exactly.
    std::size_t exact_cells = 22;
};

/// A - PBQ, the matrix whose cut-norm is minimised.
Matrix permuted_difference(const Matrix& a, const Matrix& b, const Permutation& p, const Permutation& q);

/// min over P of ||A - P B P^-1||_sq for Hermitian A, B of equal size.
DistanceResult delta_hat_square(const Matrix& a, const Matrix& b, const DistanceOptions& opts = {});

/// min over P, Q of ||A - P B Q||_sq for A, B of equal shape.
DistanceResult delta_hat_boxminus(const Matrix& a, const Matrix& b, const DistanceOptions& opts = {});

/// delta_hat_square(A^(km), B^(kn)) for k = 1..k_max, A in H_n and B in H_m.
/// Each entry is an upper bound on delta_square(A, B).
std::vector<DistanceResult> delta_square_estimate(const Matrix& a, const Matrix& b, std::size_t k_max,
                                                  const DistanceOptions& opts = {});

/// delta_hat_boxminus(A^(kr,ks), B^(km,kn)) for k = 1..k_max, A m x n and B r x s.
std::vector<DistanceResult> delta_boxminus_estimate(const Matrix& a, const Matrix& b, std::size_t k_max,
                                                    const DistanceOptions& opts = {});

}  // namespace cutspec
