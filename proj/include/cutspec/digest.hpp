#pragma once

#include <string>

#include "cutspec/matrix.hpp"

namespace cutspec {

/// "sha256:<hex>" over the dimensions (two little-endian u64) followed by the
/// entries as little-endian IEEE doubles, real then imaginary, row-major.
std::string matrix_digest(const Matrix& a);

/// "sha256:<hex>" of an arbitrary byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace cutspec
