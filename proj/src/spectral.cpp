#include "cutspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <type_traits>

#include "cutspec/errors.hpp"
#include "cutspec/summation.hpp"

namespace cutspec {

namespace {

constexpr std::size_t kMaxSweeps = 80;

inline double conj_s(double x) { return x; }
inline Complex conj_s(const Complex& z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return std::norm(z); }

template <class S>
S to_scalar(const Complex& z) {
    if constexpr (std::is_same_v<S, double>) return z.real();
    else return z;
}

/// Unit-modulus phase of a nonzero scalar.
template <class S>
S unit_phase(const S& z) {
    if constexpr (std::is_same_v<S, double>) return z < 0.0 ? -1.0 : 1.0;
    else return z / std::abs(z);
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

template <class S>
std::vector<Complex> widen(const std::vector<S>& v) {
    return std::vector<Complex>(v.begin(), v.end());
}

// Orthonormal completion: appends vectors so that basis spans C^len.
template <class S>
void complete_basis(std::vector<std::vector<S>>& basis, std::size_t want, std::size_t len) {
    for (std::size_t e = 0; e < len && basis.size() < want; ++e) {
        std::vector<S> v(len, S{});
        v[e] = S(1.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                S dot{};
                for (std::size_t i = 0; i < len; ++i) dot += conj_s(b[i]) * v[i];
                for (std::size_t i = 0; i < len; ++i) v[i] -= dot * b[i];
            }
        }
        double nrm = 0.0;
        for (const auto& x : v) nrm += abs2(x);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (auto& x : v) x /= nrm;
        basis.push_back(std::move(v));
    }
}

/// One-sided Jacobi on the columns of a tall (rows >= cols) block.
template <class S>
SpectralSummary hestenes(const Matrix& a, bool want_vectors) {
    const bool flip = a.rows() < a.cols();
    const std::size_t m = flip ? a.cols() : a.rows();
    const std::size_t n = flip ? a.rows() : a.cols();

    // Column j of G is column j of A (or of A^H when flipped).
    std::vector<std::vector<S>> g(n, std::vector<S>(m));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const S v = to_scalar<S>(a(i, j));
            if (flip) g[i][j] = conj_s(v);
            else g[j][i] = v;
        }
    }
    std::vector<std::vector<S>> v;
    if (want_vectors) {
        v.assign(n, std::vector<S>(n, S{}));
        for (std::size_t j = 0; j < n; ++j) v[j][j] = S(1.0);
    }

    const double tol = std::max(1e-15, std::sqrt(static_cast<double>(m)) * 2.3e-16);
    // Inner products this small only couple columns that are already rounding noise.
    const double negligible = 1e-32 * a.aggregates().frobenius * a.aggregates().frobenius;
    std::size_t sweep = 0;
    double worst = 0.0;
    for (; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                auto& gp = g[p];
                auto& gq = g[q];
                double alpha = 0.0;
                double beta = 0.0;
                S gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += abs2(gp[i]);
                    beta += abs2(gq[i]);
                    gamma += conj_s(gp[i]) * gq[i];
                }
                const double mag = std::abs(gamma);
                if (mag == 0.0 || mag <= negligible) continue;
                const double ratio = mag / (std::sqrt(alpha) * std::sqrt(beta));
                worst = std::max(worst, ratio);
                if (ratio <= tol) continue;
                rotated = true;
                const S phase = conj_s(unit_phase(gamma));  // e^{-i phi}
                const double zeta = (beta - alpha) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const S xp = gp[i];
                    const S xq = phase * gq[i];
                    gp[i] = c * xp - s * xq;
                    gq[i] = s * xp + c * xq;
                }
                if (want_vectors) {
                    auto& vp = v[p];
                    auto& vq = v[q];
                    for (std::size_t i = 0; i < n; ++i) {
                        const S xp = vp[i];
                        const S xq = phase * vq[i];
                        vp[i] = c * xp - s * xq;
                        vq[i] = s * xp + c * xq;
                    }
                }
            }
        }
        if (!rotated) break;
    }
    if (sweep == kMaxSweeps) throw NumericalError("one-sided Jacobi SVD did not converge", worst);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        CompensatedSum s;
        for (const auto& x : g[j]) s.add(abs2(x));
        sigma[j] = std::sqrt(s.value());
    }
    const auto order = descending_order(sigma);
    SpectralSummary out;
    out.kind = SpectrumKind::singular;
    out.sweeps = sweep;
    for (auto j : order) out.values.push_back(sigma[j]);
    if (!want_vectors) return out;

    // Negligible singular values get left vectors from an orthonormal completion.
    const double cutoff = out.values.empty() ? 0.0 : out.values[0] * 1e-13;
    std::vector<std::vector<S>> us;
    std::vector<std::vector<S>> vs;
    for (auto j : order) {
        if (sigma[j] > cutoff && sigma[j] > 0.0) {
            std::vector<S> u(g[j]);
            for (auto& x : u) x /= sigma[j];
            us.push_back(std::move(u));
        }
        vs.push_back(v[j]);
    }
    complete_basis(us, n, m);
    if (us.size() < n) throw NumericalError("left singular basis completion failed", static_cast<double>(n - us.size()));

    // A = U S V^H for the tall block; for A^H = U S V^H, A = V S U^H.
    for (std::size_t k = 0; k < n; ++k) {
        if (flip) {
            out.left.push_back(widen(vs[k]));
            out.right.push_back(widen(us[k]));
        } else {
            out.left.push_back(widen(us[k]));
            out.right.push_back(widen(vs[k]));
        }
    }
    return out;
}

/// Cyclic two-sided Jacobi for Hermitian matrices; A <- G^H A G with
/// G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
template <class S>
SpectralSummary cyclic_jacobi(const Matrix& a, bool want_vectors) {
    const std::size_t n = a.rows();
    std::vector<S> h(n * n);
    // Symmetrised copy; exact for matrices that are Hermitian bit for bit.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i * n + j] = to_scalar<S>(0.5 * (a(i, j) + std::conj(a(j, i))));
    std::vector<S> v;
    if (want_vectors) {
        v.assign(n * n, S{});
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = S(1.0);
    }
    const double fro = a.aggregates().frobenius;

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += abs2(h[i * n + j]);
        return std::sqrt(s);
    };

    const double negligible = 1e-17 * fro;
    std::size_t sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const S apq = h[p * n + q];
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = std::real(h[p * n + p]);
                const double aqq = std::real(h[q * n + q]);
                if (mag <= negligible) {
                    h[p * n + q] = S{};
                    h[q * n + p] = S{};
                    continue;
                }
                rotated = true;
                const S ph = conj_s(unit_phase(apq));  // e^{-i phi}
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Columns: A G.
                for (std::size_t k = 0; k < n; ++k) {
                    const S akp = h[k * n + p];
                    const S akq = h[k * n + q];
                    h[k * n + p] = c * akp - s * ph * akq;
                    h[k * n + q] = s * akp + c * ph * akq;
                }
                // Rows: G^H (A G).
                const S phc = conj_s(ph);
                for (std::size_t k = 0; k < n; ++k) {
                    const S apk = h[p * n + k];
                    const S aqk = h[q * n + k];
                    h[p * n + k] = c * apk - s * phc * aqk;
                    h[q * n + k] = s * apk + c * phc * aqk;
                }
                h[p * n + q] = S{};
                h[q * n + p] = S{};
                if constexpr (!std::is_same_v<S, double>) {
                    h[p * n + p] = S(h[p * n + p].real(), 0.0);
                    h[q * n + q] = S(h[q * n + q].real(), 0.0);
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const S vkp = v[k * n + p];
                        const S vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * ph * vkq;
                        v[k * n + q] = s * vkp + c * ph * vkq;
                    }
                }
            }
        }
        if (!rotated) break;
    }
    const double off = off_mass();
    if (sweep == kMaxSweeps || off > 1e-12 * fro) {
        throw NumericalError("cyclic Jacobi eigensolver did not converge", off);
    }

    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = std::real(h[i * n + i]);
    const auto order = descending_order(mu);
    SpectralSummary out;
    out.kind = SpectrumKind::hermitian;
    out.sweeps = sweep;
    for (auto i : order) out.values.push_back(mu[i]);
    if (want_vectors) {
        for (auto i : order) {
            std::vector<Complex> col(n);
            for (std::size_t k = 0; k < n; ++k) col[k] = Complex(v[k * n + i]);
            out.left.push_back(std::move(col));
        }
    }
    return out;
}

}  // namespace

SpectralSummary singular_values(const Matrix& a, bool want_vectors) {
    if (!all_finite(a)) throw PreconditionError("matrix has non-finite entries");
    return a.is_real() ? hestenes<double>(a, want_vectors) : hestenes<Complex>(a, want_vectors);
}

SpectralSummary hermitian_eigenvalues(const Matrix& a, bool want_vectors) {
    if (!a.is_hermitian()) throw PreconditionError("hermitian_eigenvalues requires a Hermitian matrix");
    if (!all_finite(a)) throw PreconditionError("matrix has non-finite entries");
    return a.is_real() ? cyclic_jacobi<double>(a, want_vectors) : cyclic_jacobi<Complex>(a, want_vectors);
}

Matrix top_deflation(const Matrix& a) {
    const SpectralSummary s = singular_values(a, true);
    const double sigma = s.values.front();
    if (sigma == 0.0) return a;
    const auto& y = s.left.front();
    const auto& x = s.right.front();
    std::vector<Complex> e(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e[i * a.cols() + j] = a(i, j) - sigma * y[i] * std::conj(x[j]);
    return Matrix(a.rows(), a.cols(), std::move(e));
}

DeflationCheck check_deflation(const Matrix& a, const Matrix& deflated) {
    const auto sa = singular_values(a);
    const auto sd = singular_values(deflated);
    DeflationCheck c;
    c.sigma2 = sa.values.size() > 1 ? sa.values[1] : 0.0;
    c.sigma1_deflated = sd.values.front();
    c.abs_error = std::abs(c.sigma1_deflated - c.sigma2);
    c.ok = c.abs_error <= 1e-8 * c.sigma2 + 1e-12 * sa.values.front();
    return c;
}

double spectral_norm(const Matrix& a) { return singular_values(a).values.front(); }

}  // namespace cutspec
