#pragma once

// Independent reference implementations used only by tests. Everything here is
// deliberately naive: plain loops, full enumeration, and Eigen for spectra.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cutspec/matrix.hpp"

namespace oracle {

using cutspec::Complex;
using cutspec::Matrix;

inline Complex naive_sum(const Matrix& a, std::uint64_t xmask, std::uint64_t ymask) {
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!((xmask >> i) & 1U)) continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if ((ymask >> j) & 1U) s += a(i, j);
    }
    return s;
}

/// Double enumeration over every (X, Y) pair.
inline double brute_square(const Matrix& a) {
    double best = 0.0;
    for (std::uint64_t x = 0; x < (1ULL << a.rows()); ++x)
        for (std::uint64_t y = 0; y < (1ULL << a.cols()); ++y)
            best = std::max(best, std::abs(naive_sum(a, x, y)));
    return best / static_cast<double>(a.rows() * a.cols());
}

inline double brute_boxdot(const Matrix& a) {
    double best = 0.0;
    for (std::uint64_t x = 1; x < (1ULL << a.rows()); ++x)
        for (std::uint64_t y = 1; y < (1ULL << a.cols()); ++y) {
            const double d = std::sqrt(static_cast<double>(__builtin_popcountll(x) * __builtin_popcountll(y)));
            best = std::max(best, std::abs(naive_sum(a, x, y)) / d);
        }
    return best;
}

inline Matrix random_integer(std::mt19937_64& rng, std::size_t m, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<Complex> e(m * n);
    for (auto& z : e) z = static_cast<double>(d(rng));
    return Matrix(m, n, std::move(e));
}

inline Matrix random_real(std::mt19937_64& rng, std::size_t m, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<Complex> e(m * n);
    for (auto& z : e) z = d(rng);
    return Matrix(m, n, std::move(e));
}

inline Matrix random_complex(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<Complex> e(m * n);
    for (auto& z : e) z = Complex(d(rng), d(rng));
    return Matrix(m, n, std::move(e));
}

inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = d(rng);
    return Matrix(n, n, std::move(e));
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = d(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            e[i * n + j] = Complex(d(rng), d(rng));
            e[j * n + i] = std::conj(e[i * n + j]);
        }
    }
    return Matrix(n, n, std::move(e));
}

inline Eigen::MatrixXcd to_eigen(const Matrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

/// Singular values from Eigen's two-sided Jacobi SVD, descending.
inline std::vector<double> singular_values(const Matrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// min over all permutation pairs (P, Q) of the cut-norm of A - P B Q, by brute force.
inline double brute_delta(const Matrix& a, const Matrix& b, bool same_permutation) {
    std::vector<std::size_t> p(a.rows());
    std::iota(p.begin(), p.end(), 0);
    double best = 1e300;
    do {
        std::vector<std::size_t> q(a.cols());
        std::iota(q.begin(), q.end(), 0);
        do {
            const auto& qq = same_permutation ? p : q;
            std::vector<Complex> e(a.rows() * a.cols());
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) e[i * a.cols() + j] = a(i, j) - b(p[i], qq[j]);
            best = std::min(best, brute_square(Matrix(a.rows(), a.cols(), std::move(e))));
            if (same_permutation) break;
        } while (std::next_permutation(q.begin(), q.end()));
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

inline bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace oracle
