#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cutspec/bound_report.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/matrix.hpp"

namespace cutspec {

/// Default for the unspecified constant C < 10^5 in the logarithmic bounds.
inline constexpr double kLogBoundConstant = 1e5;

/// sigma_1 <= c sqrt(|A|_inf ||A||_sq mn) with c = 2 ("gin1") for real A and
/// c = 4 ("gin1.1") otherwise. Needs a certified cut-norm.
BoundReport check_gin1(const Matrix& a, const ExactOptions& opts = {});

/// sigma_1 <= C ||A||_boxdot sqrt(ln m ln n). Needs m, n >= 2.
BoundReport check_gin2(const Matrix& a, double c = kLogBoundConstant, const ExactOptions& opts = {});

/// ||A||_boxdot <= sigma_1, together with ||A||_sq sqrt(mn) <= sigma_1.
BoundReport check_gin3(const Matrix& a, const ExactOptions& opts = {});

/// ||A - sigma_1 conj(y) (x) x||_boxdot <= sigma_2; for nonnegative matrices
/// with equal row sums and equal column sums the rho J form is checked too.
BoundReport check_eml(const Matrix& a, const ExactOptions& opts = {});

/// Upper bounds on sigma_2 through A - rho(A) J: "sin1" then "sin2".
std::vector<BoundReport> check_ceml(const Matrix& a, double c = kLogBoundConstant, const ExactOptions& opts = {});

enum class Th2Clause { i, iia, iib };

/// Eigenvalue closeness for A in H_n, B in H_m with |A|_inf, |B|_inf <= 1.
/// delta_upper must be a certified upper bound on delta_square(A, B); its
/// origin is recorded in the report provenance. Index i is 1-based. When
/// n < m the pair is swapped, which the symmetric distance allows.
BoundReport check_th2(const Matrix& a, const Matrix& b, double delta_upper, Th2Clause clause, std::size_t i,
                      const Provenance& delta_source = {});

/// Every clause and index whose preconditions hold.
std::vector<BoundReport> check_th2_all(const Matrix& a, const Matrix& b, double delta_upper,
                                       const Provenance& delta_source = {});

/// |sigma_i(A)/sqrt(mn) - sigma_i(B)/sqrt(rs)| <= c delta^{1/2} with c = 6, or 3
/// when both matrices are real; delta_upper bounds delta_boxminus(A, B).
BoundReport check_th3(const Matrix& a, const Matrix& b, double delta_upper, std::size_t i,
                      const Provenance& delta_source = {});

std::vector<BoundReport> check_th3_all(const Matrix& a, const Matrix& b, double delta_upper,
                                       const Provenance& delta_source = {});

struct QuantizedVector {
    std::vector<Complex> y;
    std::size_t distinct = 0;  ///< distinct entry values of y
    std::size_t cap = 0;       ///< ceil(8 pi / eps) ceil((4 / eps) ln(4n / eps))
    double error = 0.0;        ///< ||x - y||
};

/// Snaps a unit vector onto a finite polar grid. Entries below eps / (2 sqrt n)
/// become 0; other moduli round down to (1 + eps/4)^{-j} and arguments round
/// to the nearest multiple of 2 pi / ceil(8 pi / eps). Both guarantees are
/// verified afterwards and a failure raises InternalError.
QuantizedVector quantize_unit_vector(std::span<const Complex> x, double eps);

/// Report form of the quantizer: lhs = error, rhs = eps, and the value count
/// against its cap in the details.
BoundReport check_lapp(std::span<const Complex> x, double eps);

}  // namespace cutspec
