#include "cutspec/witnesses.hpp"

#include <cmath>

#include "cutspec/errors.hpp"
#include "cutspec/summation.hpp"

namespace cutspec {

namespace {

void require_positive(std::size_t n) {
    if (n == 0) throw PreconditionError("witness parameter n must be at least 1");
}

double inv_sqrt(std::size_t i, std::size_t j) {
    return 1.0 / std::sqrt(static_cast<double>(i) * static_cast<double>(j));
}

}  // namespace

Matrix star_witness(std::size_t n) {
    require_positive(n);
    const std::size_t size = 2 * n + 1;
    std::vector<Complex> e(size * size);
    for (std::size_t i = 1; i < size; ++i) {
        const double v = i <= n ? 1.0 : -1.0;
        e[i] = v;
        e[i * size] = v;
    }
    return Matrix(size, size, std::move(e));
}

Matrix hilbertish_witness(std::size_t n) {
    require_positive(n);
    return Matrix::generate(n, n, [](std::size_t i, std::size_t j) { return inv_sqrt(i + 1, j + 1); });
}

Matrix ceml_block_witness(std::size_t n) {
    require_positive(n);
    const std::size_t size = 2 * n;
    return Matrix::generate(size, size, [n](std::size_t i, std::size_t j) {
        const double b = inv_sqrt(i % n + 1, j % n + 1);
        return (i < n) == (j < n) ? 1.0 + b : 1.0 - b;
    });
}

double harmonic(std::size_t n) {
    CompensatedSum s;
    for (std::size_t i = 1; i <= n; ++i) s.add(1.0 / static_cast<double>(i));
    return s.value();
}

std::vector<Complex> ceml_test_vector(std::size_t n) {
    require_positive(n);
    std::vector<Complex> v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
        v[n + i] = -v[i];
    }
    return v;
}

}  // namespace cutspec
