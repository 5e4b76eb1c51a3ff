#include "cutspec/cut_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cutspec/blowup.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/rng.hpp"
#include "parallel.hpp"
#include "subset_search.hpp"

// Exact search works on overlay tables rather than raw permutations. Indices
// with identical rows (and, for the symmetric case, identical columns) are
// interchangeable, so a permutation only matters through the table
// N(u, v) = #{i in class u of A : P[i] in class v of B}. Rows of A - PBQ that
// fall into the same (u, v) cell are identical, and since the cut-norm
// objective is linear in each row indicator an optimal X takes whole cells.
// The cut-norm of the n x n difference therefore equals the unnormalised
// cut-norm of the cell matrix W(c, c') = N_c N_c' (A - B)(c, c').

namespace cutspec {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kSquareTableLimit = 362'880;  // 9!
constexpr std::size_t kBoxminusTableLimit = 10'000'000;
constexpr std::size_t kAnnealEvalRestarts = 2;

using detail::Dense;
using detail::Objective;
using detail::SubsetBest;

struct Classes {
    std::vector<std::size_t> of;
    std::vector<std::vector<std::size_t>> members;

    std::size_t count() const { return members.size(); }
    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s;
        for (const auto& m : members) s.push_back(m.size());
        return s;
    }
};

template <class Same>
Classes group(std::size_t n, Same same) {
    Classes c;
    c.of.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t id = 0; id < c.members.size(); ++id) {
            if (same(c.members[id].front(), i)) {
                c.of[i] = id;
                c.members[id].push_back(i);
                break;
            }
        }
        if (c.of[i] == npos) {
            c.of[i] = c.members.size();
            c.members.push_back({i});
        }
    }
    return c;
}

Classes row_classes(const Matrix& a) {
    return group(a.rows(), [&](std::size_t i, std::size_t j) {
        const auto ri = a.row(i);
        const auto rj = a.row(j);
        return std::equal(ri.begin(), ri.end(), rj.begin());
    });
}

Classes col_classes(const Matrix& a) {
    return group(a.cols(), [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, i) != a(r, j)) return false;
        return true;
    });
}

/// One side of the overlay: classes of A and of B along rows or columns.
struct Axis {
    Classes a;
    Classes b;
    std::size_t na() const { return a.count(); }
    std::size_t nb() const { return b.count(); }
};

using Table = std::vector<std::size_t>;  // na x nb, row-major

/// Visits every nonnegative integer table with the given margins in
/// lexicographic order of its row-major entries; f returns false to stop.
template <class F>
void for_each_table(const Axis& ax, F&& f) {
    const std::size_t na = ax.na();
    const std::size_t nb = ax.nb();
    std::vector<std::size_t> rowrem = ax.a.sizes();
    std::vector<std::size_t> colrem = ax.b.sizes();
    Table t(na * nb, 0);
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t cell) -> void {
        if (stop) return;
        if (cell == na * nb) {
            if (!f(static_cast<const Table&>(t))) stop = true;
            return;
        }
        const std::size_t u = cell / nb;
        const std::size_t v = cell % nb;
        std::size_t later = 0;
        for (std::size_t w = v + 1; w < nb; ++w) later += colrem[w];
        const std::size_t lo = rowrem[u] > later ? rowrem[u] - later : 0;
        const std::size_t hi = std::min(rowrem[u], colrem[v]);
        for (std::size_t x = lo; x <= hi && !stop; ++x) {
            t[cell] = x;
            rowrem[u] -= x;
            colrem[v] -= x;
            self(self, cell + 1);
            rowrem[u] += x;
            colrem[v] += x;
        }
        t[cell] = 0;
    };
    rec(rec, 0);
}

std::size_t count_tables(const Axis& ax, std::size_t cap) {
    std::size_t n = 0;
    for_each_table(ax, [&](const Table&) { return ++n <= cap; });
    return n;
}

Table table_of(const Axis& ax, const std::vector<std::size_t>& p) {
    Table t(ax.na() * ax.nb(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) ++t[ax.a.of[i] * ax.nb() + ax.b.of[p[i]]];
    return t;
}

/// Canonical permutation realising a table: members of A-class u take the
/// smallest unused members of each B-class in class order.
std::vector<std::size_t> permutation_of(const Axis& ax, const Table& t) {
    const std::size_t nb = ax.nb();
    std::vector<std::size_t> next(nb, 0);
    std::vector<std::size_t> p(ax.a.of.size(), npos);
    for (std::size_t u = 0; u < ax.na(); ++u) {
        std::size_t slot = 0;
        for (std::size_t v = 0; v < nb; ++v) {
            for (std::size_t c = 0; c < t[u * nb + v]; ++c) {
                p[ax.a.members[u][slot++]] = ax.b.members[v][next[v]++];
            }
        }
    }
    return p;
}

struct Cells {
    std::vector<std::size_t> a_rep;
    std::vector<std::size_t> b_rep;
    std::vector<double> count;
    std::vector<std::size_t> index;  // na * nb -> cell or npos
    std::size_t size() const { return a_rep.size(); }
};

Cells cells_of(const Axis& ax, const Table& t) {
    Cells c;
    c.index.assign(t.size(), npos);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] == 0) continue;
        c.index[k] = c.size();
        c.a_rep.push_back(ax.a.members[k / ax.nb()].front());
        c.b_rep.push_back(ax.b.members[k % ax.nb()].front());
        c.count.push_back(static_cast<double>(t[k]));
    }
    return c;
}

template <class S>
S as_scalar(Complex z) {
    if constexpr (std::is_same_v<S, double>) return z.real();
    else return z;
}

/// Cell matrix with the smaller side as enumerated rows.
template <class S>
Dense<S> cell_matrix(const Matrix& a, const Matrix& b, const Cells& r, const Cells& c, bool& transposed) {
    transposed = r.size() > c.size();
    Dense<S> d;
    d.m = transposed ? c.size() : r.size();
    d.n = transposed ? r.size() : c.size();
    d.a.resize(d.m * d.n);
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            const Complex diff = a(r.a_rep[i], c.a_rep[j]) - b(r.b_rep[i], c.b_rep[j]);
            const S w = as_scalar<S>(diff * (r.count[i] * c.count[j]));
            if (transposed) d.a[j * d.n + i] = w;
            else d.a[i * d.n + j] = w;
        }
    }
    return d;
}

/// The problem both engines share: A, B, the two axes (aliased for the
/// symmetric case) and the permutation state.
class Overlay {
public:
    Overlay(const Matrix& a, const Matrix& b, DistanceKind kind) : a_(a), b_(b), kind_(kind) {
        rows_.a = row_classes(a);
        rows_.b = row_classes(b);
        if (kind == DistanceKind::boxminus) {
            cols_.a = col_classes(a);
            cols_.b = col_classes(b);
        }
    }

    bool symmetric() const { return kind_ == DistanceKind::square; }
    const Axis& rows() const { return rows_; }
    const Axis& cols() const { return symmetric() ? rows_ : cols_; }
    const Matrix& a() const { return a_; }
    const Matrix& b() const { return b_; }

    /// Largest possible number of enumerated (outer) cells over all tables.
    std::size_t max_outer_cells() const {
        auto bound = [](const Axis& ax) { return std::min(ax.na() * ax.nb(), ax.a.of.size()); };
        return std::min(bound(rows()), bound(cols()));
    }

    /// Expands a cell-space witness to index sets of the full difference and
    /// returns the normalised objective recomputed there.
    double rescore(const Table& tr, const Table& tc, const std::vector<std::size_t>& p,
                   const std::vector<std::size_t>& q, const SubsetBest& best, bool transposed) const {
        const Cells cr = cells_of(rows(), tr);
        const Cells cc = cells_of(cols(), tc);
        const auto& xr = transposed ? best.y : best.x;
        const auto& xc = transposed ? best.x : best.y;
        auto expand = [](const Axis& ax, const Cells& cells, const std::vector<std::size_t>& perm,
                         const std::vector<std::size_t>& chosen) {
            std::vector<char> keep(cells.size(), 0);
            for (std::size_t c : chosen) keep[c] = 1;
            std::vector<std::size_t> out;
            for (std::size_t i = 0; i < perm.size(); ++i) {
                if (keep[cells.index[ax.a.of[i] * ax.nb() + ax.b.of[perm[i]]]]) out.push_back(i);
            }
            return IndexSet(perm.size(), std::move(out));
        };
        const Matrix d = permuted_difference(a_, b_, Permutation(p), Permutation(q));
        return norm_objective(d, NormKind::square, expand(rows(), cr, p, xr), expand(cols(), cc, q, xc));
    }

    template <class F>
    auto dispatch(F&& f) const {
        if (a_.is_real() && b_.is_real()) return f(double{});
        return f(Complex{});
    }

private:
    const Matrix& a_;
    const Matrix& b_;
    DistanceKind kind_;
    Axis rows_;
    Axis cols_;
};

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrices differ in shape: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    if (!all_finite(a) || !all_finite(b)) throw PreconditionError("matrix has non-finite entries");
}

std::size_t table_limit(const DistanceOptions& opts, DistanceKind kind) {
    if (opts.table_limit != 0) return opts.table_limit;
    return kind == DistanceKind::square ? kSquareTableLimit : kBoxminusTableLimit;
}

/// Number of exact evaluations, or npos when over the limit.
std::size_t exact_workload(const Overlay& ov, std::size_t limit) {
    const std::size_t nr = count_tables(ov.rows(), limit);
    if (nr > limit) return npos;
    if (ov.symmetric()) return nr;
    const std::size_t cap = limit / nr;
    const std::size_t nc = count_tables(ov.cols(), cap);
    return nc > cap ? npos : nr * nc;
}

DistanceResult finish(const Overlay& ov, DistanceKind kind, std::vector<std::size_t> p, std::vector<std::size_t> q,
                      double value) {
    DistanceResult r;
    r.kind = kind;
    r.value = value;
    r.rows = ov.a().rows();
    r.cols = ov.a().cols();
    r.perm_P = Permutation(std::move(p));
    if (kind == DistanceKind::boxminus) r.perm_Q = Permutation(std::move(q));
    return r;
}

template <class S>
DistanceResult exact_search(const Overlay& ov, DistanceKind kind) {
    double best = std::numeric_limits<double>::infinity();
    Table best_r;
    Table best_c;
    std::size_t visited = 0;
    detail::SmallSearch<S> searcher;
    auto consider = [&](const Table& tr, const Table& tc) {
        ++visited;
        const Cells cr = cells_of(ov.rows(), tr);
        const Cells cc = ov.symmetric() ? cr : cells_of(ov.cols(), tc);
        bool transposed = false;
        const Dense<S> d = cell_matrix<S>(ov.a(), ov.b(), cr, cc, transposed);
        const SubsetBest s = searcher.run(d, Objective::square, best);
        if (!s.aborted && s.value < best) {
            best = s.value;
            best_r = tr;
            best_c = tc;
        }
    };

    if (ov.symmetric()) {
        for_each_table(ov.rows(), [&](const Table& t) {
            consider(t, t);
            return best > 0.0;
        });
    } else {
        // Keep the side with fewer tables in memory and stream the other.
        std::vector<Table> stored;
        const bool store_rows = count_tables(ov.rows(), npos) <= count_tables(ov.cols(), npos);
        for_each_table(store_rows ? ov.rows() : ov.cols(), [&](const Table& t) {
            stored.push_back(t);
            return true;
        });
        for_each_table(store_rows ? ov.cols() : ov.rows(), [&](const Table& t) {
            for (const Table& s : stored) {
                if (best == 0.0) return false;
                if (store_rows) consider(s, t);
                else consider(t, s);
            }
            return best > 0.0;
        });
    }

    auto p = permutation_of(ov.rows(), best_r);
    auto q = ov.symmetric() ? p : permutation_of(ov.cols(), best_c);
    const Cells cr = cells_of(ov.rows(), best_r);
    const Cells cc = ov.symmetric() ? cr : cells_of(ov.cols(), best_c);
    bool transposed = false;
    const SubsetBest s = detail::enumerate_exact(cell_matrix<S>(ov.a(), ov.b(), cr, cc, transposed), Objective::square);
    const double value = ov.rescore(best_r, best_c, p, q, s, transposed);
    DistanceResult r = finish(ov, kind, std::move(p), std::move(q), value);
    r.method = DistanceMethod::exact;
    r.bound_kind = BoundKind::exact_at_k;
    r.tables = visited;
    return r;
}

struct AnnealRun {
    std::vector<std::size_t> p;
    std::vector<std::size_t> q;
    double value = std::numeric_limits<double>::infinity();
    bool certified = false;
};

template <class S>
double heuristic_cells(const Overlay& ov, const Table& tr, const Table& tc, Rng& rng) {
    const Cells cr = cells_of(ov.rows(), tr);
    const Cells cc = ov.symmetric() ? cr : cells_of(ov.cols(), tc);
    bool transposed = false;
    const Dense<S> d = cell_matrix<S>(ov.a(), ov.b(), cr, cc, transposed);
    double v = 0.0;
    for (std::size_t r = 0; r < kAnnealEvalRestarts; ++r) v = std::max(v, detail::local_search(d, Objective::square, rng).value);
    return v;
}

template <class S>
AnnealRun anneal_restart(const Overlay& ov, const DistanceOptions& opts, std::size_t restart, std::size_t proposals) {
    Rng rng = make_rng(opts.seed, restart);
    const std::size_t m = ov.a().rows();
    const std::size_t n = ov.a().cols();
    auto shuffled = [&](std::size_t size) {
        std::vector<std::size_t> v(size);
        std::iota(v.begin(), v.end(), 0);
        if (restart > 0) {
            for (std::size_t i = size; i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
        }
        return v;
    };
    std::vector<std::size_t> p = shuffled(m);
    std::vector<std::size_t> q = ov.symmetric() ? p : shuffled(n);
    Table tr = table_of(ov.rows(), p);
    Table tc = ov.symmetric() ? tr : table_of(ov.cols(), q);

    double current = heuristic_cells<S>(ov, tr, tc, rng);
    AnnealRun best{p, q, current, false};
    Table best_r = tr;
    Table best_c = tc;
    double temperature = current;

    for (std::size_t step = 0; step < proposals; ++step, temperature *= 0.995) {
        const bool on_rows = ov.symmetric() || uniform_below(rng, m + n) < m;
        const Axis& ax = on_rows ? ov.rows() : ov.cols();
        std::vector<std::size_t>& perm = on_rows ? p : q;
        if (perm.size() < 2) continue;
        const std::size_t i = uniform_below(rng, perm.size());
        std::size_t j = uniform_below(rng, perm.size() - 1);
        if (j >= i) ++j;
        if (ax.a.of[i] == ax.a.of[j] || ax.b.of[perm[i]] == ax.b.of[perm[j]]) continue;

        const std::size_t nb = ax.nb();
        Table& t = on_rows ? tr : tc;
        // Swapping the same pair twice restores the state.
        auto swap_pair = [&] {
            const std::size_t ci = ax.a.of[i] * nb;
            const std::size_t cj = ax.a.of[j] * nb;
            t[ci + ax.b.of[perm[i]]] -= 1;
            t[cj + ax.b.of[perm[j]]] -= 1;
            std::swap(perm[i], perm[j]);
            t[ci + ax.b.of[perm[i]]] += 1;
            t[cj + ax.b.of[perm[j]]] += 1;
        };
        swap_pair();
        if (ov.symmetric()) tc = tr;
        const double candidate = heuristic_cells<S>(ov, tr, tc, rng);
        const double delta = candidate - current;
        const bool accept =
            delta <= 0.0 || (temperature > 0.0 && uniform01(rng) < std::exp(-delta / temperature));
        if (accept) {
            current = candidate;
            if (current < best.value) {
                best = {p, ov.symmetric() ? p : q, current, false};
                best_r = tr;
                best_c = tc;
            }
        } else {
            swap_pair();
            if (ov.symmetric()) tc = tr;
        }
    }

    // Re-score the restart's witness exactly when the cell count allows it.
    const Cells cr = cells_of(ov.rows(), best_r);
    const Cells cc = ov.symmetric() ? cr : cells_of(ov.cols(), best_c);
    bool transposed = false;
    const Dense<S> d = cell_matrix<S>(ov.a(), ov.b(), cr, cc, transposed);
    SubsetBest s;
    if (d.m <= opts.exact_cells) {
        s = detail::enumerate_exact(d, Objective::square);
        best.certified = true;
    } else {
        Rng polish = make_rng(opts.seed, opts.restarts + restart);
        for (std::size_t r = 0; r < 8; ++r) {
            SubsetBest t = detail::local_search(d, Objective::square, polish);
            if (t.value > s.value) s = std::move(t);
        }
    }
    best.value = ov.rescore(best_r, best_c, best.p, best.q, s, transposed);
    return best;
}

template <class S>
DistanceResult anneal_search(const Overlay& ov, DistanceKind kind, const DistanceOptions& opts) {
    if (opts.restarts == 0) throw PreconditionError("restarts must be at least 1");
    const std::size_t proposals = opts.proposals != 0 ? opts.proposals : 200 * ov.a().rows() * ov.a().cols();
    std::vector<AnnealRun> runs(opts.restarts);
    detail::parallel_tasks(opts.restarts, [&](std::size_t r) { runs[r] = anneal_restart<S>(ov, opts, r, proposals); });
    // A certified score beats an uncertified one; then smaller value, then earlier restart.
    std::size_t pick = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        const auto& a = runs[r];
        const auto& b = runs[pick];
        if ((a.certified && !b.certified) || (a.certified == b.certified && a.value < b.value)) pick = r;
    }
    AnnealRun& w = runs[pick];
    DistanceResult r = finish(ov, kind, std::move(w.p), std::move(w.q), w.value);
    r.method = DistanceMethod::anneal;
    r.bound_kind = w.certified ? BoundKind::upper_bound : BoundKind::heuristic;
    r.tables = proposals * opts.restarts;
    return r;
}

DistanceResult search(const Matrix& a, const Matrix& b, DistanceKind kind, const DistanceOptions& opts) {
    const Overlay ov(a, b, kind);
    DistanceMethod method = opts.method;
    const std::size_t limit = table_limit(opts, kind);
    if (method != DistanceMethod::anneal) {
        const bool small_cells = ov.max_outer_cells() <= opts.exact_cells;
        const bool fits = small_cells && exact_workload(ov, limit) != npos;
        if (!fits && method == DistanceMethod::exact) {
            throw GuardRefusal(small_cells ? "exact search needs more than " + std::to_string(limit) + " overlay tables"
                                           : "exact search needs more than " + std::to_string(opts.exact_cells) +
                                                 " overlay cells");
        }
        method = fits ? DistanceMethod::exact : DistanceMethod::anneal;
    }
    return ov.dispatch([&](auto tag) {
        using S = decltype(tag);
        return method == DistanceMethod::exact ? exact_search<S>(ov, kind) : anneal_search<S>(ov, kind, opts);
    });
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v]) throw PreconditionError("permutation is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

std::string to_string(DistanceKind kind) { return kind == DistanceKind::square ? "square" : "boxminus"; }

std::string to_string(DistanceMethod method) {
    switch (method) {
        case DistanceMethod::automatic: return "auto";
        case DistanceMethod::exact: return "exact";
        case DistanceMethod::anneal: return "anneal";
    }
    return "unknown";
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::exact_at_k: return "exact-at-k";
        case BoundKind::upper_bound: return "upper-bound";
        case BoundKind::heuristic: return "heuristic";
    }
    return "unknown";
}

Matrix permuted_difference(const Matrix& a, const Matrix& b, const Permutation& p, const Permutation& q) {
    if (p.size() != a.rows() || q.size() != a.cols()) throw DimensionError("permutation size does not match matrix");
    return a - permuted(b, p.map(), q.map());
}

DistanceResult delta_hat_square(const Matrix& a, const Matrix& b, const DistanceOptions& opts) {
    require_same_shape(a, b);
    if (!a.is_square()) throw DimensionError("delta_hat_square needs square matrices");
    if (!a.is_hermitian() || !b.is_hermitian()) throw PreconditionError("delta_hat_square needs Hermitian matrices");
    return search(a, b, DistanceKind::square, opts);
}

DistanceResult delta_hat_boxminus(const Matrix& a, const Matrix& b, const DistanceOptions& opts) {
    require_same_shape(a, b);
    return search(a, b, DistanceKind::boxminus, opts);
}

std::vector<DistanceResult> delta_square_estimate(const Matrix& a, const Matrix& b, std::size_t k_max,
                                                  const DistanceOptions& opts) {
    if (k_max == 0) throw PreconditionError("k_max must be positive");
    if (!a.is_square() || !b.is_square()) throw DimensionError("delta_square_estimate needs square matrices");
    std::vector<DistanceResult> out;
    for (std::size_t k = 1; k <= k_max; ++k) {
        DistanceResult r = delta_hat_square(blowup_square(a, k * b.rows()), blowup_square(b, k * a.rows()), opts);
        r.blowup_k = k;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<DistanceResult> delta_boxminus_estimate(const Matrix& a, const Matrix& b, std::size_t k_max,
                                                    const DistanceOptions& opts) {
    if (k_max == 0) throw PreconditionError("k_max must be positive");
    std::vector<DistanceResult> out;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const Matrix ab = blowup_rect(a, k * b.rows(), k * b.cols());
        const Matrix bb = blowup_rect(b, k * a.rows(), k * a.cols());
        DistanceResult r = delta_hat_boxminus(ab, bb, opts);
        r.blowup_k = k;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace cutspec
