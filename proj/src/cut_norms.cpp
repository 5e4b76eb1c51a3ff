#include "cutspec/cut_norms.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cutspec/digest.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/spectral.hpp"
#include "cutspec/summation.hpp"
#include "subset_search.hpp"

namespace cutspec {

using detail::Dense;
using detail::Objective;
using detail::SubsetBest;

std::string to_string(NormKind kind) { return kind == NormKind::square ? "square" : "boxdot"; }

std::string to_string(NormMethod method) {
    switch (method) {
        case NormMethod::exact: return "exact";
        case NormMethod::rank_one: return "rank-one";
        case NormMethod::anneal: return "anneal";
        case NormMethod::angle_grid: return "angle-grid";
    }
    return "unknown";
}

double norm_objective(const Matrix& a, NormKind kind, const IndexSet& x, const IndexSet& y) {
    if (x.empty() || y.empty()) return 0.0;
    const double s = std::abs(submatrix_sum(a, x, y));
    if (kind == NormKind::square) return s / (static_cast<double>(a.rows()) * static_cast<double>(a.cols()));
    return s / std::sqrt(static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

namespace {

Objective objective_for(NormKind kind) { return kind == NormKind::square ? Objective::square : Objective::boxdot; }

CutNormResult finish(const Matrix& a, NormKind kind, IndexSet x, IndexSet y, NormMethod method, bool certified) {
    CutNormResult r;
    r.kind = kind;
    r.method = method;
    r.certified = certified;
    r.witness_sum = (x.empty() || y.empty()) ? Complex{} : submatrix_sum(a, x, y);
    r.value = norm_objective(a, kind, x, y);
    r.x = std::move(x);
    r.y = std::move(y);
    if (certified) r.upper_bound = r.value;
    return r;
}

CutNormResult from_best(const Matrix& a, NormKind kind, const SubsetBest& best, bool transposed, NormMethod method,
                        bool certified) {
    IndexSet outer = IndexSet::from_unsorted(transposed ? a.cols() : a.rows(), best.x);
    IndexSet inner = IndexSet::from_unsorted(transposed ? a.rows() : a.cols(), best.y);
    if (transposed) std::swap(outer, inner);
    return finish(a, kind, std::move(outer), std::move(inner), method, certified);
}

void require_finite(const Matrix& a) {
    if (!all_finite(a)) throw PreconditionError("matrix has non-finite entries");
}

// Best subset of a single vector: max |sum_S v| (square) or max |sum_S v| / sqrt|S| (boxdot).
std::pair<double, std::vector<std::size_t>> best_vector_subset(const std::vector<Complex>& v, Objective obj) {
    bool real = true;
    for (const auto& z : v) real = real && z.imag() == 0.0;
    if (real) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
        detail::RealInner inner(r.size());
        const auto p = inner.solve(r.data(), r.size(), 1, obj);
        return {p.value, inner.materialize(r.data(), r.size(), p, obj)};
    }
    detail::ComplexInner inner(v.size());
    const auto p = inner.solve(v.data(), v.size(), 1, obj);
    return {p.value, inner.materialize(v.data(), v.size(), p, obj)};
}

}  // namespace

CutNormResult norm_exact(const Matrix& a, NormKind kind, const ExactOptions& opts) {
    require_finite(a);
    const std::size_t small = std::min(a.rows(), a.cols());
    if (small > opts.exact_limit) {
        throw GuardRefusal("exact " + to_string(kind) + " norm needs min(m, n) <= " + std::to_string(opts.exact_limit) +
                           ", got " + std::to_string(small) + "; use --method anneal or angle-grid");
    }
    bool transposed = false;
    SubsetBest best;
    if (a.is_real()) {
        const auto d = detail::dense_outer_rows<double>(a, transposed);
        best = detail::enumerate_exact(d, objective_for(kind));
    } else {
        const auto d = detail::dense_outer_rows<Complex>(a, transposed);
        best = detail::enumerate_exact(d, objective_for(kind));
    }
    return from_best(a, kind, best, transposed, NormMethod::exact, true);
}

CutNormResult cut_norm_exact(const Matrix& a, const ExactOptions& opts) { return norm_exact(a, NormKind::square, opts); }

CutNormResult boxdot_norm_exact(const Matrix& a, const ExactOptions& opts) {
    return norm_exact(a, NormKind::boxdot, opts);
}

CutNormResult norm_rank_one(const Matrix& a, NormKind kind) {
    require_finite(a);
    const Objective obj = objective_for(kind);
    const auto s = singular_values(a, true);
    const double sigma1 = s.values.front();
    const double sigma2 = s.values.size() > 1 ? s.values[1] : 0.0;
    const double mn = static_cast<double>(a.rows()) * static_cast<double>(a.cols());
    if (sigma1 == 0.0) {
        IndexSet x = kind == NormKind::square ? IndexSet(a.rows()) : IndexSet(a.rows(), {0});
        IndexSet y = kind == NormKind::square ? IndexSet(a.cols()) : IndexSet(a.cols(), {0});
        auto r = finish(a, kind, std::move(x), std::move(y), NormMethod::rank_one, true);
        r.upper_bound = 0.0;
        return r;
    }
    if (sigma2 > 1e-12 * sigma1) {
        throw GuardRefusal("matrix is not numerically rank one (sigma_2 / sigma_1 = " +
                           std::to_string(sigma2 / sigma1) + ")");
    }
    const auto& left = s.left.front();
    std::vector<Complex> right_conj(s.right.front());
    for (auto& z : right_conj) z = std::conj(z);

    // sum R[X,Y] = sigma_1 (sum_X y_i)(sum_Y conj x_j), so both sides optimise independently.
    const auto [vx, xs] = best_vector_subset(left, obj);
    const auto [vy, ys] = best_vector_subset(right_conj, obj);
    double rank_one_value = sigma1 * vx * vy;
    if (kind == NormKind::square) rank_one_value /= mn;

    CompensatedSum resid;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) resid.add(std::norm(a(i, j) - sigma1 * left[i] * right_conj[j]));
    const double efro = std::sqrt(resid.value());
    // |sum E[X,Y]| <= sqrt(|X||Y|) ||E||_2 <= sqrt(|X||Y|) ||E||_F.
    const double upper = rank_one_value + (kind == NormKind::square ? efro / std::sqrt(mn) : efro);

    auto r = finish(a, kind, IndexSet::from_unsorted(a.rows(), xs), IndexSet::from_unsorted(a.cols(), ys),
                    NormMethod::rank_one, true);
    r.upper_bound = std::max(upper, r.value);
    if (r.upper_bound - r.value > 1e-9 * std::max(1.0, r.value)) {
        throw GuardRefusal("rank-one certificate gap " + std::to_string(r.upper_bound - r.value) + " is too wide");
    }
    return r;
}

CutNormResult norm_certified(const Matrix& a, NormKind kind, const ExactOptions& opts) {
    if (std::min(a.rows(), a.cols()) <= opts.exact_limit) return norm_exact(a, kind, opts);
    try {
        return norm_rank_one(a, kind);
    } catch (const GuardRefusal& e) {
        throw GuardRefusal("no certified " + to_string(kind) + " norm: min(m, n) = " +
                           std::to_string(std::min(a.rows(), a.cols())) + " exceeds the exact limit " +
                           std::to_string(opts.exact_limit) + " and " + e.what());
    }
}

CutNormResult cut_norm_heuristic(const Matrix& a, NormKind kind, const HeuristicOptions& opts) {
    require_finite(a);
    if (opts.restarts == 0) throw PreconditionError("restarts must be at least 1");
    bool transposed = false;
    std::vector<SubsetBest> runs(opts.restarts);
    auto run_all = [&](const auto& d) {
        detail::parallel_tasks(opts.restarts, [&](std::size_t r) {
            Rng rng = make_rng(opts.seed, r);
            runs[r] = detail::local_search(d, objective_for(kind), rng);
        });
    };
    if (a.is_real()) run_all(detail::dense_outer_rows<double>(a, transposed));
    else run_all(detail::dense_outer_rows<Complex>(a, transposed));
    std::size_t pick = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].value > runs[pick].value) pick = r;
    return from_best(a, kind, runs[pick], transposed, NormMethod::anneal, false);
}

CutNormResult cut_norm_angle_grid(const Matrix& a, NormKind kind, std::size_t angles) {
    require_finite(a);
    if (angles == 0) throw PreconditionError("angle grid needs at least one angle");
    const Objective obj = objective_for(kind);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<double> re(m * n);
    std::vector<double> row_sums(m);
    std::vector<double> col_sums(n);
    detail::RealInner row_inner(m);
    detail::RealInner col_inner(n);

    CutNormResult best;
    bool have = false;
    const std::size_t grid = a.is_real() ? 1 : angles;
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
        const Complex w = std::polar(1.0, -theta);
        for (std::size_t t = 0; t < m * n; ++t) re[t] = (a.entries()[t] * w).real();

        // Alternate exact one-sided solves on the rotated real part, starting from Y = [n].
        std::vector<std::size_t> y(n);
        for (std::size_t j = 0; j < n; ++j) y[j] = j;
        std::vector<std::size_t> x;
        for (int iter = 0; iter < 100; ++iter) {
            std::fill(row_sums.begin(), row_sums.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i)
                for (auto j : y) row_sums[i] += re[i * n + j];
            auto px = row_inner.solve(row_sums.data(), m, std::max<std::size_t>(1, y.size()), obj);
            auto next_x = row_inner.materialize(row_sums.data(), m, px, obj);
            std::fill(col_sums.begin(), col_sums.end(), 0.0);
            for (auto i : next_x)
                for (std::size_t j = 0; j < n; ++j) col_sums[j] += re[i * n + j];
            auto py = col_inner.solve(col_sums.data(), n, std::max<std::size_t>(1, next_x.size()), obj);
            auto next_y = col_inner.materialize(col_sums.data(), n, py, obj);
            const bool stable = next_x == x && next_y == y;
            x = std::move(next_x);
            y = std::move(next_y);
            if (stable) break;
        }
        auto cand = finish(a, kind, IndexSet(m, x), IndexSet(n, y), NormMethod::angle_grid, false);
        if (!have || cand.value > best.value) {
            best = std::move(cand);
            have = true;
        }
    }
    best.upper_bound = std::numeric_limits<double>::infinity();
    return best;
}

BoundReport bilinear_form_bound_check(const Matrix& a, std::span<const Complex> x, std::span<const Complex> y,
                                      const CutNormResult& square_norm) {
    if (square_norm.kind != NormKind::square || !square_norm.certified) {
        throw GuardRefusal("le1 needs a certified cut-norm; a heuristic lower bound would make the bound unsound");
    }
    if (x.size() != a.cols() || y.size() != a.rows()) {
        throw DimensionError("le1 needs x of length " + std::to_string(a.cols()) + " and y of length " +
                             std::to_string(a.rows()));
    }
    const auto ax = multiply(a, x);
    CompensatedComplexSum inner;
    for (std::size_t i = 0; i < a.rows(); ++i) inner.add(ax[i] * std::conj(y[i]));
    double xinf = 0.0;
    double yinf = 0.0;
    bool real = a.is_real();
    for (const auto& z : x) {
        xinf = std::max(xinf, std::abs(z));
        real = real && z.imag() == 0.0;
    }
    for (const auto& z : y) {
        yinf = std::max(yinf, std::abs(z));
        real = real && z.imag() == 0.0;
    }
    const double c = real ? 4.0 : 16.0;
    const double mn = static_cast<double>(a.rows()) * static_cast<double>(a.cols());
    const double norm = square_norm.upper_bound;
    std::string blob = matrix_digest(a);
    char buf[64];
    for (const auto& z : x) {
        std::snprintf(buf, sizeof buf, "|%.17g,%.17g", z.real(), z.imag());
        blob += buf;
    }
    blob += ';';
    for (const auto& z : y) {
        std::snprintf(buf, sizeof buf, "|%.17g,%.17g", z.real(), z.imag());
        blob += buf;
    }
    auto r = make_report("le1", std::abs(inner.value()), c * xinf * yinf * norm * mn, c, sha256_hex(blob));
    r.provenance.method = to_string(square_norm.method);
    r.details = {{"cut_norm", norm}, {"x_inf", xinf}, {"y_inf", yinf}, {"real", real}};
    return r;
}

}  // namespace cutspec
