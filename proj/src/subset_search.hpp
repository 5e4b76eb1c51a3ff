#pragma once

// Subset-search kernels shared by the cut-norm and cut-distance modules.
//
// All kernels work on a dense row-major block whose rows form the enumerated
// ("outer") side. For a fixed outer set X the column sums c_j = sum_{i in X} a_ij
// are handed to an inner solver that returns the best Y for that X exactly.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "cutspec/matrix.hpp"
#include "cutspec/rng.hpp"
#include "parallel.hpp"

namespace cutspec::detail {

enum class Objective {
    square,  ///< |sum A[X,Y]| (unnormalised)
    boxdot,  ///< |sum A[X,Y]| / sqrt(|X||Y|)
};

template <class S>
struct Dense {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<S> a;

    const S* row(std::size_t i) const { return a.data() + i * n; }
};

inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }

/// Dense block of A or its transpose, whichever has fewer rows.
template <class S>
Dense<S> dense_outer_rows(const Matrix& a, bool& transposed) {
    transposed = a.rows() > a.cols();
    Dense<S> d;
    d.m = transposed ? a.cols() : a.rows();
    d.n = transposed ? a.rows() : a.cols();
    d.a.resize(d.m * d.n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex z = a(i, j);
            S v;
            if constexpr (std::is_same_v<S, double>) v = z.real();
            else v = z;
            if (transposed) d.a[j * d.n + i] = v;
            else d.a[i * d.n + j] = v;
        }
    }
    return d;
}

inline double normalize_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    return a;
}

/// Result of an inner solve, kept compact so the set is only built on improvement.
struct InnerPick {
    double value = -1.0;
    int sign = 1;
    std::size_t ell = 0;
    double theta = 0.0;
    std::size_t step = 0;
};

class RealInner {
public:
    explicit RealInner(std::size_t n) : order_(n) {}

    InnerPick solve(const double* c, std::size_t n, std::size_t xcount, Objective obj) {
        InnerPick p;
        if (obj == Objective::square) {
            double pos = 0.0;
            double neg = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (c[j] > 0.0) pos += c[j];
                else neg -= c[j];
            }
            if (pos > neg) {
                p.sign = 1;
            } else if (neg > pos) {
                p.sign = -1;
            } else {
                // Equal magnitudes: keep the set that avoids the highest nonzero index.
                p.sign = 1;
                for (std::size_t j = n; j-- > 0;) {
                    if (c[j] != 0.0) {
                        p.sign = c[j] > 0.0 ? -1 : 1;
                        break;
                    }
                }
            }
            p.value = std::max(pos, neg);
            return p;
        }
        sort_desc(c, n);
        double top = 0.0;
        double bottom = 0.0;
        const double xs = static_cast<double>(xcount);
        for (std::size_t l = 1; l <= n; ++l) {
            top += c[order_[l - 1]];
            bottom += c[order_[n - l]];
            const double denom = std::sqrt(xs * static_cast<double>(l));
            const double vt = top / denom;
            const double vb = -bottom / denom;
            if (vt > p.value) p = {vt, 1, l, 0.0, 0};
            if (vb > p.value) p = {vb, -1, l, 0.0, 0};
        }
        return p;
    }

    std::vector<std::size_t> materialize(const double* c, std::size_t n, const InnerPick& p, Objective obj) {
        std::vector<std::size_t> y;
        if (obj == Objective::square) {
            for (std::size_t j = 0; j < n; ++j) {
                if (p.sign > 0 ? c[j] > 0.0 : c[j] < 0.0) y.push_back(j);
            }
            return y;
        }
        sort_desc(c, n);
        if (p.sign > 0) y.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(p.ell));
        else y.assign(order_.end() - static_cast<std::ptrdiff_t>(p.ell), order_.end());
        std::sort(y.begin(), y.end());
        return y;
    }

private:
    void sort_desc(const double* c, std::size_t n) {
        order_.resize(n);
        for (std::size_t j = 0; j < n; ++j) order_[j] = j;
        std::sort(order_.begin(), order_.end(), [c](std::size_t u, std::size_t v) {
            return c[u] > c[v] || (c[u] == c[v] && u < v);
        });
    }

    std::vector<std::size_t> order_;
};

/// Exact inner solver for complex column sums.
///
/// Square: the best Y is an open half-plane set {j : Re(c_j e^{-i theta}) > 0};
/// membership only changes at theta = arg(c_j) -/+ pi/2, so one sorted sweep
/// over those 2n events visits every candidate.
///
/// Boxdot: for a fixed size l the best Y is a top-l set of the projections at
/// some angle; the projection order only changes at arg(c_j - c_k) +/- pi/2, so
/// every order is seen at the midpoint of two consecutive critical angles.
class ComplexInner {
public:
    explicit ComplexInner(std::size_t n) : order_(n), proj_(n) {}

    InnerPick solve(const Complex* c, std::size_t n, std::size_t xcount, Objective obj) {
        return obj == Objective::square ? solve_square(c, n) : solve_boxdot(c, n, xcount);
    }

    std::vector<std::size_t> materialize(const Complex* c, std::size_t n, const InnerPick& p, Objective obj) {
        std::vector<std::size_t> y;
        if (obj == Objective::square) {
            std::vector<char> in(n, 0);
            build_events(c, n, &in);
            std::size_t group = 0;
            for (std::size_t t = 0; t < events_.size() && group < p.step;) {
                const double angle = events_[t].angle;
                for (; t < events_.size() && events_[t].angle == angle; ++t) in[events_[t].j] = events_[t].enter;
                ++group;
            }
            for (std::size_t j = 0; j < n; ++j)
                if (in[j]) y.push_back(j);
            return y;
        }
        project(c, n, p.theta);
        full_sort(n);
        y.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(p.ell));
        std::sort(y.begin(), y.end());
        return y;
    }

private:
    struct Event {
        double angle;
        std::uint32_t j;
        char enter;
    };

    // Fills events_ and returns the running sum of the set that is active just below angle 0.
    Complex build_events(const Complex* c, std::size_t n, std::vector<char>* initial) {
        constexpr double pi = std::numbers::pi;
        events_.clear();
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) {
            if (c[j] == Complex{}) continue;
            const double enter = normalize_angle(std::arg(c[j]) - pi / 2.0);
            const double leave = enter < pi ? enter + pi : enter - pi;
            if (enter >= pi) {
                s += c[j];
                if (initial) (*initial)[j] = 1;
            }
            events_.push_back({enter, static_cast<std::uint32_t>(j), 1});
            events_.push_back({leave, static_cast<std::uint32_t>(j), 0});
        }
        std::sort(events_.begin(), events_.end(), [](const Event& u, const Event& v) {
            if (u.angle != v.angle) return u.angle < v.angle;
            if (u.j != v.j) return u.j < v.j;
            return u.enter < v.enter;
        });
        return s;
    }

    InnerPick solve_square(const Complex* c, std::size_t n) {
        Complex s = build_events(c, n, nullptr);
        InnerPick p;
        p.value = std::abs(s);
        p.step = 0;
        std::size_t group = 0;
        for (std::size_t t = 0; t < events_.size();) {
            const double angle = events_[t].angle;
            for (; t < events_.size() && events_[t].angle == angle; ++t) {
                const Event& e = events_[t];
                if (e.enter) s += c[e.j];
                else s -= c[e.j];
            }
            ++group;
            const double v = std::abs(s);
            if (v > p.value) {
                p.value = v;
                p.step = group;
            }
        }
        return p;
    }

    InnerPick solve_boxdot(const Complex* c, std::size_t n, std::size_t xcount) {
        constexpr double pi = std::numbers::pi;
        angles_.clear();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const Complex d = c[j] - c[k];
                if (d == Complex{}) continue;
                const double a = std::arg(d);
                angles_.push_back(normalize_angle(a + pi / 2.0));
                angles_.push_back(normalize_angle(a - pi / 2.0));
            }
        }
        std::sort(angles_.begin(), angles_.end());
        angles_.erase(std::unique(angles_.begin(), angles_.end()), angles_.end());
        mids_.clear();
        if (angles_.empty()) {
            mids_.push_back(0.0);
        } else {
            for (std::size_t t = 0; t + 1 < angles_.size(); ++t) mids_.push_back(0.5 * (angles_[t] + angles_[t + 1]));
            mids_.push_back(normalize_angle(0.5 * (angles_.back() + angles_.front() + 2.0 * pi)));
        }
        order_.resize(n);
        for (std::size_t j = 0; j < n; ++j) order_[j] = j;
        InnerPick p;
        const double xs = static_cast<double>(xcount);
        for (double theta : mids_) {
            project(c, n, theta);
            insertion_sort(n);
            Complex s{};
            for (std::size_t l = 1; l <= n; ++l) {
                s += c[order_[l - 1]];
                const double v = std::abs(s) / std::sqrt(xs * static_cast<double>(l));
                if (v > p.value) {
                    p.value = v;
                    p.ell = l;
                    p.theta = theta;
                }
            }
        }
        return p;
    }

    void project(const Complex* c, std::size_t n, double theta) {
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        proj_.resize(n);
        for (std::size_t j = 0; j < n; ++j) proj_[j] = c[j].real() * ct + c[j].imag() * st;
    }

    bool before(std::size_t u, std::size_t v) const {
        return proj_[u] > proj_[v] || (proj_[u] == proj_[v] && u < v);
    }

    void insertion_sort(std::size_t n) {
        for (std::size_t t = 1; t < n; ++t) {
            const std::size_t key = order_[t];
            std::size_t s = t;
            while (s > 0 && before(key, order_[s - 1])) {
                order_[s] = order_[s - 1];
                --s;
            }
            order_[s] = key;
        }
    }

    void full_sort(std::size_t n) {
        order_.resize(n);
        for (std::size_t j = 0; j < n; ++j) order_[j] = j;
        std::sort(order_.begin(), order_.end(), [this](std::size_t u, std::size_t v) { return before(u, v); });
    }

    std::vector<std::size_t> order_;
    std::vector<double> proj_;
    std::vector<Event> events_;
    std::vector<double> angles_;
    std::vector<double> mids_;
};

template <class S>
using InnerFor = std::conditional_t<std::is_same_v<S, double>, RealInner, ComplexInner>;

inline void neumaier(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
    else comp += (x - t) + sum;
    sum = t;
}

/// Compensated column sums of a set of rows, updated one row at a time.
template <class S>
class ColumnSums {
public:
    explicit ColumnSums(std::size_t n) : n_(n), sum_(2 * n), comp_(2 * n), out_(n) {}

    void reset() {
        std::fill(sum_.begin(), sum_.end(), 0.0);
        std::fill(comp_.begin(), comp_.end(), 0.0);
    }

    void add(const S* row, bool subtract) {
        for (std::size_t j = 0; j < n_; ++j) {
            if constexpr (std::is_same_v<S, double>) {
                neumaier(sum_[j], comp_[j], subtract ? -row[j] : row[j]);
            } else {
                neumaier(sum_[2 * j], comp_[2 * j], subtract ? -row[j].real() : row[j].real());
                neumaier(sum_[2 * j + 1], comp_[2 * j + 1], subtract ? -row[j].imag() : row[j].imag());
            }
        }
    }

    const S* values() {
        for (std::size_t j = 0; j < n_; ++j) {
            if constexpr (std::is_same_v<S, double>) out_[j] = sum_[j] + comp_[j];
            else out_[j] = S(sum_[2 * j] + comp_[2 * j], sum_[2 * j + 1] + comp_[2 * j + 1]);
        }
        return out_.data();
    }

private:
    std::size_t n_;
    std::vector<double> sum_;
    std::vector<double> comp_;
    std::vector<S> out_;
};

struct SubsetBest {
    double value = -1.0;
    std::uint64_t xmask = 0;
    std::vector<std::size_t> x;
    std::vector<std::size_t> y;
    bool aborted = false;

    /// Ordering used everywhere: higher value first, then smaller outer mask.
    bool better_than(const SubsetBest& o) const {
        return value > o.value || (value == o.value && xmask < o.xmask);
    }
};

inline std::vector<std::size_t> mask_members(std::uint64_t mask) {
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

inline constexpr std::size_t kGrayChunkBits = 12;

/// Exhaustive search over every outer subset in Gray-code order.
///
/// The mask range is split into fixed chunks of 2^12 that restart their column
/// sums from scratch, so the result does not depend on the thread count. When
/// a value >= abort_at is seen the search stops early and returns aborted.
/// probes are outer masks tried first, which lets callers reuse maximisers
/// from related problems to abort quickly.
template <class S>
SubsetBest enumerate_exact(const Dense<S>& d, Objective obj,
                           double abort_at = std::numeric_limits<double>::infinity(),
                           std::span<const std::uint64_t> probes = {}) {
    const std::size_t m = d.m;
    const std::size_t n = d.n;
    if (m >= 63) throw std::length_error("outer dimension too large for enumeration");

    auto evaluate = [&](std::uint64_t g, ColumnSums<S>& sums, InnerFor<S>& inner, SubsetBest& best) -> bool {
        const std::size_t xcount = static_cast<std::size_t>(std::popcount(g));
        if (obj == Objective::boxdot && xcount == 0) return false;
        const S* c = sums.values();
        const InnerPick p = inner.solve(c, n, xcount, obj);
        if (p.value > best.value || (p.value == best.value && g < best.xmask)) {
            best.value = p.value;
            best.xmask = g;
            best.y = inner.materialize(c, n, p, obj);
        }
        return p.value >= abort_at;
    };

    if (!probes.empty() && abort_at < std::numeric_limits<double>::infinity()) {
        ColumnSums<S> sums(n);
        InnerFor<S> inner(n);
        SubsetBest probe_best;
        for (std::uint64_t g : probes) {
            sums.reset();
            for (std::uint64_t bits = g; bits; bits &= bits - 1) sums.add(d.row(std::countr_zero(bits)), false);
            if (evaluate(g, sums, inner, probe_best)) {
                probe_best.aborted = true;
                probe_best.x = mask_members(probe_best.xmask);
                return probe_best;
            }
        }
    }

    const std::uint64_t total = std::uint64_t{1} << m;
    const std::uint64_t chunk = std::min<std::uint64_t>(total, std::uint64_t{1} << kGrayChunkBits);
    const std::size_t tasks = static_cast<std::size_t>(total / chunk);
    std::vector<SubsetBest> results(tasks);
    std::atomic<bool> stop{false};

    parallel_tasks(tasks, [&](std::size_t task) {
        ColumnSums<S> sums(n);
        InnerFor<S> inner(n);
        SubsetBest& best = results[task];
        const std::uint64_t start = static_cast<std::uint64_t>(task) * chunk;
        std::uint64_t g = start ^ (start >> 1);
        for (std::uint64_t bits = g; bits; bits &= bits - 1) sums.add(d.row(std::countr_zero(bits)), false);
        if (evaluate(g, sums, inner, best)) {
            best.aborted = true;
            stop.store(true, std::memory_order_relaxed);
            return;
        }
        for (std::uint64_t idx = start + 1; idx < start + chunk; ++idx) {
            if ((idx & 255) == 0 && stop.load(std::memory_order_relaxed)) return;
            const int bit = std::countr_zero(idx);
            const std::uint64_t flip = std::uint64_t{1} << bit;
            sums.add(d.row(static_cast<std::size_t>(bit)), (g & flip) != 0);
            g ^= flip;
            if (evaluate(g, sums, inner, best)) {
                best.aborted = true;
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    });

    SubsetBest out;
    for (auto& r : results) {
        if (r.aborted) {
            r.x = mask_members(r.xmask);
            return r;
        }
        if (r.value >= 0.0 && (out.value < 0.0 || r.better_than(out))) out = std::move(r);
    }
    out.x = mask_members(out.xmask);
    return out;
}

/// Sequential enumerate_exact for callers that solve many small problems in a
/// row: buffers persist between calls. With at most 2^12 outer subsets the
/// whole range is one chunk, so results match enumerate_exact exactly; larger
/// problems are forwarded to it.
template <class S>
class SmallSearch {
public:
    SubsetBest run(const Dense<S>& d, Objective obj, double abort_at = std::numeric_limits<double>::infinity()) {
        if (d.m > kGrayChunkBits) return enumerate_exact(d, obj, abort_at);
        if (d.n != n_) {
            n_ = d.n;
            sums_.emplace(n_);
            inner_.emplace(n_);
        }
        sums_->reset();
        SubsetBest best;
        auto evaluate = [&](std::uint64_t g) -> bool {
            const std::size_t xcount = static_cast<std::size_t>(std::popcount(g));
            if (obj == Objective::boxdot && xcount == 0) return false;
            const S* c = sums_->values();
            const InnerPick p = inner_->solve(c, n_, xcount, obj);
            if (p.value > best.value || (p.value == best.value && g < best.xmask)) {
                best.value = p.value;
                best.xmask = g;
                best.y = inner_->materialize(c, n_, p, obj);
            }
            return p.value >= abort_at;
        };
        std::uint64_t g = 0;
        bool stop = evaluate(g);
        const std::uint64_t total = std::uint64_t{1} << d.m;
        for (std::uint64_t idx = 1; idx < total && !stop; ++idx) {
            const int bit = std::countr_zero(idx);
            const std::uint64_t flip = std::uint64_t{1} << bit;
            sums_->add(d.row(static_cast<std::size_t>(bit)), (g & flip) != 0);
            g ^= flip;
            stop = evaluate(g);
        }
        best.aborted = stop;
        best.x = mask_members(best.xmask);
        return best;
    }

private:
    std::size_t n_ = std::numeric_limits<std::size_t>::max();
    std::optional<ColumnSums<S>> sums_;
    std::optional<InnerFor<S>> inner_;
};

/// One restart of first-improvement local search on the outer membership
/// vector; the inner set is re-solved exactly after every flip.
template <class S>
SubsetBest local_search(const Dense<S>& d, Objective obj, Rng& rng, std::size_t max_passes = 1000) {
    const std::size_t m = d.m;
    const std::size_t n = d.n;
    std::vector<char> in(m, 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        in[i] = static_cast<char>(rng() >> 63);
        count += static_cast<std::size_t>(in[i]);
    }
    if (count == 0) {
        in[uniform_below(rng, m)] = 1;
        count = 1;
    }
    std::vector<S> c(n, S{});
    for (std::size_t i = 0; i < m; ++i) {
        if (!in[i]) continue;
        const S* r = d.row(i);
        for (std::size_t j = 0; j < n; ++j) c[j] += r[j];
    }
    InnerFor<S> inner(n);
    double current = inner.solve(c.data(), n, count, obj).value;
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;

    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
        bool improved = false;
        for (std::size_t i : order) {
            const bool removing = in[i] != 0;
            if (removing && count == 1 && obj == Objective::boxdot) continue;
            const S* r = d.row(i);
            for (std::size_t j = 0; j < n; ++j) c[j] += removing ? -r[j] : r[j];
            const std::size_t next_count = removing ? count - 1 : count + 1;
            const double v = inner.solve(c.data(), n, next_count, obj).value;
            if (v > current * (1.0 + 1e-13) + 1e-300) {
                in[i] = static_cast<char>(!removing);
                count = next_count;
                current = v;
                improved = true;
            } else {
                for (std::size_t j = 0; j < n; ++j) c[j] += removing ? r[j] : -r[j];
            }
        }
        if (!improved) break;
    }

    // Rebuild the column sums exactly for the final witness.
    ColumnSums<S> sums(n);
    SubsetBest out;
    for (std::size_t i = 0; i < m; ++i) {
        if (in[i]) {
            sums.add(d.row(i), false);
            out.x.push_back(i);
        }
    }
    const S* exact = sums.values();
    const InnerPick p = inner.solve(exact, n, count, obj);
    out.value = p.value;
    out.y = inner.materialize(exact, n, p, obj);
    return out;
}

}  // namespace cutspec::detail
