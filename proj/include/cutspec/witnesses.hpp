#pragma once

#include <cstddef>
#include <vector>

#include "cutspec/matrix.hpp"

namespace cutspec {

/// (2n+1)x(2n+1) symmetric: first row and column are +1 on indices 2..n+1,
/// -1 on n+2..2n+1 (1-based), zero elsewhere.
Matrix star_witness(std::size_t n);

/// n x n with a_ij = (ij)^{-1/2} (1-based indices).
Matrix hilbertish_witness(std::size_t n);

/// [[J + B, J - B], [J - B, J + B]] with B = hilbertish_witness(n).
Matrix ceml_block_witness(std::size_t n);

/// Harmonic number s_n = sum_{i<=n} 1/i.
double harmonic(std::size_t n);

/// (1, 2^{-1/2}, ..., n^{-1/2}, -1, ..., -n^{-1/2}); eigenvector of the block
/// witness for the eigenvalue 2 s_n.
std::vector<Complex> ceml_test_vector(std::size_t n);

}  // namespace cutspec
