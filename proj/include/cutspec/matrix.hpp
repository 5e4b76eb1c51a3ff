#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace cutspec {

using Complex = std::complex<double>;

/// A subset of {0, ..., universe-1} stored as a strictly increasing list.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t universe) : universe_(universe) {}
    /// Throws DimensionError if members are out of range or not strictly increasing.
    IndexSet(std::size_t universe, std::vector<std::size_t> members);

    static IndexSet full(std::size_t universe);
    static IndexSet from_mask(std::size_t universe, std::uint64_t mask);
    /// Builds from an unordered list; duplicates are rejected.
    static IndexSet from_unsorted(std::size_t universe, std::vector<std::size_t> members);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    bool contains(std::size_t index) const;
    /// True when the members are exactly {0, ..., size()-1}.
    bool is_prefix() const noexcept;
    /// Bitmask form; only available when universe <= 64.
    std::optional<std::uint64_t> mask() const;
    std::vector<std::size_t> one_based() const;

    bool operator==(const IndexSet&) const = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::size_t> members_;
};

struct Aggregates {
    double inf_norm = 0.0;   ///< max |a_ij|
    double frobenius = 0.0;  ///< sqrt(sum |a_ij|^2)
    Complex total_sum{};     ///< sum of all entries
    Complex density{};       ///< total_sum / (m n)
};

/// How the hermitian flag is decided at construction.
enum class HermitianCheck {
    exact,     ///< a_ij == conj(a_ji) bit for bit
    tolerant,  ///< |a_ij - conj(a_ji)| <= 1e-12 max(1, |A|_inf)
};

/// Dense complex matrix, row-major and immutable after construction.
///
/// Aggregates are computed once in the constructor. Row prefix sums used by
/// submatrix_sum() are built lazily on first use; the cache is shared between
/// copies, which is safe because the entries never change.
class Matrix {
public:
    /// Zero matrix. Both dimensions must be positive.
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries,
           HermitianCheck check = HermitianCheck::exact);

    static Matrix from_real(std::size_t rows, std::size_t cols, std::span<const double> entries);
    /// J_{m,n}
    static Matrix ones(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Complex> d);

    template <class F>
    static Matrix generate(std::size_t rows, std::size_t cols, F&& f) {
        std::vector<Complex> e(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                e[i * cols + j] = Complex(f(i, j));
            }
        }
        return Matrix(rows, cols, std::move(e));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_real() const noexcept { return real_; }
    bool is_hermitian() const noexcept { return hermitian_; }

    Complex operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
    /// Bounds-checked access; throws DimensionError.
    Complex at(std::size_t i, std::size_t j) const;

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<const Complex> row(std::size_t i) const noexcept {
        return std::span<const Complex>(entries_).subspan(i * cols_, cols_);
    }

    const Aggregates& aggregates() const noexcept { return aggregates_; }

    /// Compensated prefix sum of row i over columns [0, q).
    Complex row_prefix(std::size_t i, std::size_t q) const;

private:
    struct PrefixCache {
        std::once_flag once;
        std::vector<Complex> table;
    };

    void finish_construction(HermitianCheck check);

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
    Aggregates aggregates_;
    bool real_ = true;
    bool hermitian_ = false;
    std::shared_ptr<PrefixCache> prefix_;
};

/// Sum of A[X, Y]. Empty X or Y yields 0. Row partials are accumulated with
/// compensation and then combined across rows, so the full-set call
/// reproduces aggregates().total_sum exactly.
Complex submatrix_sum(const Matrix& a, const IndexSet& x, const IndexSet& y);

inline const Aggregates& aggregates(const Matrix& a) { return a.aggregates(); }

Matrix transpose(const Matrix& a);
/// Conjugate transpose.
Matrix adjoint(const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(Complex c, const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// A[X, Y] as a new matrix (hermitian flag preserved when X == Y).
Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols);

/// Result(i, j) = A(row_map[i], col_map[j]).
Matrix permuted(const Matrix& a, std::span<const std::size_t> row_map, std::span<const std::size_t> col_map);

/// Scales A so that |A|_inf <= 1; returns the factor that was divided out (1 if none).
std::pair<Matrix, double> rescale_to_unit(const Matrix& a);

std::vector<Complex> multiply(const Matrix& a, std::span<const Complex> x);

/// Frobenius norm of A - B (same shape).
double frobenius_distance(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& a);

}  // namespace cutspec
