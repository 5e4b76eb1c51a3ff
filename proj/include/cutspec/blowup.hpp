#pragma once

#include <cstddef>

#include "cutspec/bound_report.hpp"
#include "cutspec/matrix.hpp"

namespace cutspec {

/// Materialised blow-ups refuse to exceed this many entries.
inline constexpr std::size_t kMaxBlowupEntries = 10'000'000;

/// A (x) J_p for square A; the hermitian flag carries over.
Matrix blowup_square(const Matrix& a, std::size_t p);

/// A (x) J_{p,q}.
Matrix blowup_rect(const Matrix& a, std::size_t p, std::size_t q);

/// Eigenvalues of A^(k) against {k mu_i(A)} plus (k-1)n zeros; lhs is the
/// largest deviation, rhs the tolerance 1e-8 k ||A||_F.
BoundReport check_blowup_spectrum_hermitian(const Matrix& a, std::size_t k);

/// Singular values of A^(p,q) against {sqrt(pq) sigma_i(A)} padded with zeros.
BoundReport check_blowup_spectrum_rect(const Matrix& a, std::size_t p, std::size_t q);

/// Both eigenvalue-ratio chains for every i:
///   0 <= mu_i(A^(k))/(kn) - mu_i(A)/n <= ||A||_F / (n sqrt(n-i+1))
///   0 >= mu_{kn-i+1}(A^(k))/(kn) - mu_{n-i+1}(A)/n >= -||A||_F / (n sqrt(n-i+1))
/// The report carries the tightest of the 4n sub-inequalities.
BoundReport check_blowup_eigen_ratio(const Matrix& a, std::size_t k);

}  // namespace cutspec
