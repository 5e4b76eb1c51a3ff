#include "cutspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutspec/errors.hpp"
#include "cutspec/summation.hpp"

namespace cutspec {

IndexSet::IndexSet(std::size_t universe, std::vector<std::size_t> members)
    : universe_(universe), members_(std::move(members)) {
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (members_[k] >= universe_) {
            throw DimensionError("index " + std::to_string(members_[k]) + " outside universe of size " +
                                 std::to_string(universe_));
        }
        if (k > 0 && members_[k] <= members_[k - 1]) {
            throw DimensionError("index set members must be strictly increasing");
        }
    }
}

IndexSet IndexSet::full(std::size_t universe) {
    std::vector<std::size_t> m(universe);
    for (std::size_t i = 0; i < universe; ++i) m[i] = i;
    IndexSet s(universe);
    s.members_ = std::move(m);
    return s;
}

IndexSet IndexSet::from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe < 64 && (mask >> universe) != 0) {
        throw DimensionError("mask has bits outside universe");
    }
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe && i < 64; ++i) {
        if ((mask >> i) & 1U) s.members_.push_back(i);
    }
    return s;
}

IndexSet IndexSet::from_unsorted(std::size_t universe, std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    return IndexSet(universe, std::move(members));
}

bool IndexSet::contains(std::size_t index) const {
    return std::binary_search(members_.begin(), members_.end(), index);
}

bool IndexSet::is_prefix() const noexcept {
    return members_.empty() || members_.back() + 1 == members_.size();
}

std::optional<std::uint64_t> IndexSet::mask() const {
    if (universe_ > 64) return std::nullopt;
    std::uint64_t m = 0;
    for (auto i : members_) m |= std::uint64_t{1} << i;
    return m;
}

std::vector<std::size_t> IndexSet::one_based() const {
    std::vector<std::size_t> out(members_);
    for (auto& v : out) ++v;
    return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, std::vector<Complex>(rows * cols)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries, HermitianCheck check)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("matrix dimensions must be positive");
    }
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("entry count " + std::to_string(entries_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    finish_construction(check);
}

void Matrix::finish_construction(HermitianCheck check) {
    prefix_ = std::make_shared<PrefixCache>();
    double inf = 0.0;
    CompensatedSum frob;
    CompensatedComplexSum total;
    real_ = true;
    for (std::size_t i = 0; i < rows_; ++i) {
        CompensatedComplexSum row_sum;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Complex z = entries_[i * cols_ + j];
            inf = std::max(inf, std::abs(z));
            frob.add(std::norm(z));
            row_sum.add(z);
            if (z.imag() != 0.0) real_ = false;
        }
        total.add(row_sum.value());
    }
    aggregates_.inf_norm = inf;
    aggregates_.frobenius = std::sqrt(frob.value());
    aggregates_.total_sum = total.value();
    aggregates_.density = aggregates_.total_sum / static_cast<double>(rows_ * cols_);

    hermitian_ = false;
    if (rows_ == cols_) {
        const double tol = check == HermitianCheck::exact ? 0.0 : 1e-12 * std::max(1.0, inf);
        hermitian_ = true;
        for (std::size_t i = 0; i < rows_ && hermitian_; ++i) {
            for (std::size_t j = i; j < cols_; ++j) {
                const Complex a = entries_[i * cols_ + j];
                const Complex b = std::conj(entries_[j * cols_ + i]);
                if (tol == 0.0 ? a != b : std::abs(a - b) > tol) {
                    hermitian_ = false;
                    break;
                }
            }
        }
    }
}

Matrix Matrix::from_real(std::size_t rows, std::size_t cols, std::span<const double> entries) {
    std::vector<Complex> e(entries.begin(), entries.end());
    return Matrix(rows, cols, std::move(e));
}

Matrix Matrix::ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, std::vector<Complex>(rows * cols, Complex(1.0, 0.0)));
}

Matrix Matrix::identity(std::size_t n) {
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return Matrix(n, n, std::move(e));
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
    const std::size_t n = d.size();
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return Matrix(n, n, std::move(e));
}

Complex Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw DimensionError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    return (*this)(i, j);
}

Complex Matrix::row_prefix(std::size_t i, std::size_t q) const {
    std::call_once(prefix_->once, [this] {
        auto& t = prefix_->table;
        t.assign(rows_ * (cols_ + 1), Complex{});
        for (std::size_t r = 0; r < rows_; ++r) {
            CompensatedComplexSum s;
            for (std::size_t c = 0; c < cols_; ++c) {
                s.add(entries_[r * cols_ + c]);
                t[r * (cols_ + 1) + c + 1] = s.value();
            }
        }
    });
    return prefix_->table[i * (cols_ + 1) + q];
}

Complex submatrix_sum(const Matrix& a, const IndexSet& x, const IndexSet& y) {
    if (x.universe() != a.rows() || y.universe() != a.cols()) {
        throw DimensionError("index sets do not match a " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    }
    if (x.empty() || y.empty()) return Complex{};
    CompensatedComplexSum total;
    if (y.is_prefix()) {
        const std::size_t q = y.size();
        for (auto i : x.members()) total.add(a.row_prefix(i, q));
        return total.value();
    }
    for (auto i : x.members()) {
        CompensatedComplexSum row_sum;
        for (auto j : y.members()) row_sum.add(a(i, j));
        total.add(row_sum.value());
    }
    return total.value();
}

Matrix transpose(const Matrix& a) {
    std::vector<Complex> e(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e[j * a.rows() + i] = a(i, j);
    return Matrix(a.cols(), a.rows(), std::move(e));
}

Matrix adjoint(const Matrix& a) {
    std::vector<Complex> e(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e[j * a.rows() + i] = std::conj(a(i, j));
    return Matrix(a.cols(), a.rows(), std::move(e));
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "subtract");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator-(const Matrix& a) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto& z : e) z = -z;
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator*(Complex c, const Matrix& a) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto& z : e) z *= c;
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    std::vector<Complex> e(a.rows() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) e[i * b.cols() + j] += aik * b(k, j);
        }
    }
    return Matrix(a.rows(), b.cols(), std::move(e));
}

Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols) {
    if (rows.universe() != a.rows() || cols.universe() != a.cols()) {
        throw DimensionError("submatrix: index sets do not match matrix shape");
    }
    if (rows.empty() || cols.empty()) throw DimensionError("submatrix: empty index set");
    std::vector<Complex> e;
    e.reserve(rows.size() * cols.size());
    for (auto i : rows.members())
        for (auto j : cols.members()) e.push_back(a(i, j));
    const auto check = (a.is_hermitian() && rows == cols) ? HermitianCheck::tolerant : HermitianCheck::exact;
    return Matrix(rows.size(), cols.size(), std::move(e), check);
}

Matrix permuted(const Matrix& a, std::span<const std::size_t> row_map, std::span<const std::size_t> col_map) {
    if (row_map.size() != a.rows() || col_map.size() != a.cols()) {
        throw DimensionError("permuted: map sizes do not match matrix shape");
    }
    std::vector<Complex> e(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (row_map[i] >= a.rows()) throw DimensionError("permuted: row index out of range");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (col_map[j] >= a.cols()) throw DimensionError("permuted: column index out of range");
            e[i * a.cols() + j] = a(row_map[i], col_map[j]);
        }
    }
    const auto check = a.is_hermitian() ? HermitianCheck::tolerant : HermitianCheck::exact;
    return Matrix(a.rows(), a.cols(), std::move(e), check);
}

std::pair<Matrix, double> rescale_to_unit(const Matrix& a) {
    const double inf = a.aggregates().inf_norm;
    if (inf <= 1.0) return {a, 1.0};
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto& z : e) z /= inf;
    const auto check = a.is_hermitian() ? HermitianCheck::tolerant : HermitianCheck::exact;
    return {Matrix(a.rows(), a.cols(), std::move(e), check), inf};
}

std::vector<Complex> multiply(const Matrix& a, std::span<const Complex> x) {
    if (x.size() != a.cols()) throw DimensionError("multiply: vector length does not match column count");
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        CompensatedComplexSum s;
        for (std::size_t j = 0; j < a.cols(); ++j) s.add(a(i, j) * x[j]);
        y[i] = s.value();
    }
    return y;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "frobenius_distance");
    CompensatedSum s;
    for (std::size_t k = 0; k < a.entries().size(); ++k) s.add(std::norm(a.entries()[k] - b.entries()[k]));
    return std::sqrt(s.value());
}

bool all_finite(const Matrix& a) {
    return std::all_of(a.entries().begin(), a.entries().end(),
                       [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace cutspec
