#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "cutspec/matrix.hpp"

namespace cutspec {

enum class MatrixFormat { matrix_market, csv };

/// Parses a matrix from text. Matrix Market supports array and coordinate
/// layouts with real, integer, complex or pattern fields and general,
/// symmetric, skew-symmetric or hermitian symmetry. CSV rows hold tokens of
/// the form <re>[(+|-)<im>i]; a bare <im>i is also accepted.
Matrix parse_matrix(std::string_view text, MatrixFormat format);

Matrix load_matrix(std::istream& in, MatrixFormat format);

/// Picks the format from the extension (.mtx / .mm vs .csv / .txt), falling
/// back to sniffing for a %%MatrixMarket banner.
Matrix load_matrix_file(const std::string& path);

/// Matrix Market array format, 17 significant digits, real field when every
/// entry is real.
void write_matrix_market(std::ostream& out, const Matrix& a);
std::string to_matrix_market(const Matrix& a);
void save_matrix_file(const std::string& path, const Matrix& a);

/// Parses one CSV token; exposed for tests.
Complex parse_complex_token(std::string_view token, std::size_t line, std::size_t column);

}  // namespace cutspec
