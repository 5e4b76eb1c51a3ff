#include "cutspec/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutspec/digest.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/spectral.hpp"

namespace cutspec {

namespace {

void require_factor(std::size_t f, const char* name) {
    if (f == 0) throw PreconditionError(std::string("blow-up factor ") + name + " must be positive");
}

double max_deviation(const std::vector<double>& got, const std::vector<double>& want) {
    double dev = 0.0;
    for (std::size_t t = 0; t < got.size(); ++t) dev = std::max(dev, std::abs(got[t] - want[t]));
    return dev;
}

}  // namespace

Matrix blowup_rect(const Matrix& a, std::size_t p, std::size_t q) {
    require_factor(p, "p");
    require_factor(q, "q");
    const std::size_t rows = a.rows() * p;
    const std::size_t cols = a.cols() * q;
    if (rows / p != a.rows() || cols / q != a.cols() || (cols != 0 && rows > kMaxBlowupEntries / cols)) {
        throw GuardRefusal("blow-up of size " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds " +
                           std::to_string(kMaxBlowupEntries) + " entries");
    }
    std::vector<Complex> e(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) e[i * cols + j] = a(i / p, j / q);
    return Matrix(rows, cols, std::move(e));
}

Matrix blowup_square(const Matrix& a, std::size_t p) {
    if (!a.is_square()) throw DimensionError("blowup_square needs a square matrix");
    return blowup_rect(a, p, p);
}

BoundReport check_blowup_spectrum_hermitian(const Matrix& a, std::size_t k) {
    if (!a.is_hermitian()) throw PreconditionError("pro1 needs a Hermitian matrix");
    const auto big = hermitian_eigenvalues(blowup_square(a, k)).values;
    std::vector<double> want = hermitian_eigenvalues(a).values;
    for (auto& v : want) v *= static_cast<double>(k);
    want.resize(big.size(), 0.0);
    std::sort(want.rbegin(), want.rend());
    const double tol = 1e-8 * static_cast<double>(k) * a.aggregates().frobenius;
    auto r = make_report("pro1", max_deviation(big, want), tol, static_cast<double>(k), matrix_digest(a));
    r.provenance.method = "eigen";
    r.provenance.k = k;
    r.details = {{"eigenvalues", big}, {"expected", want}};
    return r;
}

BoundReport check_blowup_spectrum_rect(const Matrix& a, std::size_t p, std::size_t q) {
    const auto big = singular_values(blowup_rect(a, p, q)).values;
    std::vector<double> want = singular_values(a).values;
    const double scale = std::sqrt(static_cast<double>(p) * static_cast<double>(q));
    for (auto& v : want) v *= scale;
    want.resize(big.size(), 0.0);
    const double tol = 1e-8 * scale * a.aggregates().frobenius;
    auto r = make_report("pro2", max_deviation(big, want), tol, scale, matrix_digest(a));
    r.provenance.method = "svd";
    r.details = {{"p", p}, {"q", q}, {"singular_values", big}, {"expected", want}};
    return r;
}

BoundReport check_blowup_eigen_ratio(const Matrix& a, std::size_t k) {
    if (!a.is_hermitian()) throw PreconditionError("prop needs a Hermitian matrix");
    require_factor(k, "k");
    const std::size_t n = a.rows();
    const auto mu = hermitian_eigenvalues(a).values;
    const auto big = hermitian_eigenvalues(blowup_square(a, k)).values;
    const double fro = a.aggregates().frobenius;
    const double dn = static_cast<double>(n);
    const double kn = static_cast<double>(k) * dn;

    // Each sub-inequality is stored as (lhs, rhs) with lhs <= rhs expected.
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    auto consider = [&](double lhs, double rhs) {
        if (rhs - lhs < worst_slack) {
            worst_slack = rhs - lhs;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
    };
    bool all_hold = true;
    for (std::size_t i = 1; i <= n; ++i) {
        const double cap = fro / (dn * std::sqrt(static_cast<double>(n - i + 1)));
        const double head = big[i - 1] / kn - mu[i - 1] / dn;
        const double tail = big[k * n - i] / kn - mu[n - i] / dn;
        consider(0.0, head);
        consider(head, cap);
        consider(tail, 0.0);
        consider(-cap, tail);
        const bool ok = within_tolerance(head, cap) && within_tolerance(cap - head, cap) &&
                        within_tolerance(-tail, cap) && within_tolerance(tail + cap, cap);
        all_hold = all_hold && ok;
        rows.push_back({{"i", i}, {"head", head}, {"tail", tail}, {"cap", cap}, {"holds", ok}});
    }
    auto r = make_report("prop", worst_lhs, worst_rhs, static_cast<double>(k), matrix_digest(a));
    r.holds = r.holds && all_hold;
    r.provenance.method = "eigen";
    r.provenance.k = k;
    r.details = {{"per_index", rows}, {"tail_reading", "mu_{kn-i+1}(A^(k)) / (kn)"}};
    return r;
}

}  // namespace cutspec
