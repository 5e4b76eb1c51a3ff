#pragma once

#include <cstddef>
#include <vector>

#include "cutspec/matrix.hpp"

namespace cutspec {

enum class SpectrumKind { singular, hermitian };

struct SpectralSummary {
    SpectrumKind kind = SpectrumKind::singular;
    /// Descending. Singular: min(m, n) values >= 0. Hermitian: n eigenvalues.
    std::vector<double> values;
    /// Singular: left vectors u_i (length m). Hermitian: eigenvectors. Empty unless requested.
    std::vector<std::vector<Complex>> left;
    /// Singular only: right vectors v_i (length n) with A v_i = sigma_i u_i.
    std::vector<std::vector<Complex>> right;
    std::size_t sweeps = 0;
};

/// One-sided Jacobi SVD. Throws NumericalError if the sweep cap is reached.
SpectralSummary singular_values(const Matrix& a, bool want_vectors = false);

/// Cyclic Jacobi eigensolver. Throws PreconditionError unless a.is_hermitian().
SpectralSummary hermitian_eigenvalues(const Matrix& a, bool want_vectors = false);

/// A - sigma_1 u_1 v_1^H, i.e. entries a_ij - sigma_1 y_i conj(x_j) for the top
/// right vector x and left vector y. Returns A unchanged when sigma_1 = 0.
Matrix top_deflation(const Matrix& a);

struct DeflationCheck {
    double sigma2 = 0.0;            ///< sigma_2(A), 0 when min(m, n) = 1
    double sigma1_deflated = 0.0;   ///< sigma_1(A - R)
    double abs_error = 0.0;
    bool ok = false;                ///< |difference| <= 1e-8 sigma_2 + 1e-12 sigma_1
};

DeflationCheck check_deflation(const Matrix& a, const Matrix& deflated);

/// Largest singular value only.
double spectral_norm(const Matrix& a);

}  // namespace cutspec
