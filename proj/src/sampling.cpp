#include "cutspec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cutspec/digest.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/spectral.hpp"
#include "parallel.hpp"

namespace cutspec {

namespace {

struct Interlacing {
    double worst = 0.0;
    double tol = 0.0;
};

Interlacing interlacing(const std::vector<double>& mu_a, const std::vector<double>& mu_b, double fro) {
    const std::size_t n = mu_a.size();
    const std::size_t k = mu_b.size();
    Interlacing r{-std::numeric_limits<double>::infinity(), 1e-9 * fro};
    for (std::size_t i = 0; i < k; ++i) {
        r.worst = std::max(r.worst, mu_b[i] - mu_a[i]);
        r.worst = std::max(r.worst, mu_a[n - k + i] - mu_b[i]);
    }
    return r;
}

}  // namespace

IndexSet sample_subset(std::size_t n, std::size_t k, Rng& rng) {
    if (k < 1 || k > n) throw PreconditionError("sample size k must lie in [1, n]");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + uniform_below(rng, n - i)]);
    idx.resize(k);
    return IndexSet::from_unsorted(n, std::move(idx));
}

PrincipalSample sample_principal(const Matrix& a, std::size_t k, std::uint64_t seed) {
    if (!a.is_hermitian()) throw PreconditionError("sample_principal needs a Hermitian matrix");
    Rng rng = make_rng(seed, 0);
    IndexSet x = sample_subset(a.rows(), k, rng);
    Matrix b = submatrix(a, x, x);
    return {std::move(x), std::move(b)};
}

BoundReport check_interlacing(const Matrix& a, const Matrix& b, const IndexSet& x) {
    if (!a.is_hermitian()) throw PreconditionError("interlacing needs a Hermitian matrix");
    if (x.universe() != a.rows()) throw DimensionError("index set universe does not match the matrix");
    const std::string digest = matrix_digest(a);
    if (matrix_digest(submatrix(a, x, x)) != matrix_digest(b)) {
        throw PreconditionError("B is not the principal submatrix A[X, X]");
    }
    const auto mu_a = hermitian_eigenvalues(a).values;
    const auto mu_b = hermitian_eigenvalues(b).values;
    const Interlacing r = interlacing(mu_a, mu_b, a.aggregates().frobenius);
    auto rep = make_report("interlacing", r.worst, r.tol, 1.0, sha256_hex(digest + "\n" + matrix_digest(b)));
    rep.details = {{"k", mu_b.size()}, {"n", mu_a.size()}, {"subset", x.one_based()}};
    return rep;
}

SsampReport run_ssamp_experiment(const Matrix& a, std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (!a.is_real() || !a.is_hermitian()) throw PreconditionError("the sampling experiment needs a real symmetric matrix");
    if (k < 2 || k > a.rows()) throw PreconditionError("sample size k must lie in [2, n]");
    if (trials == 0) throw PreconditionError("trials must be positive");
    const auto [unit, factor] = rescale_to_unit(a);
    const auto mu_a = hermitian_eigenvalues(unit).values;
    const double fro = unit.aggregates().frobenius;

    SsampReport rep;
    rep.n = a.rows();
    rep.k = k;
    rep.trials = trials;
    rep.seed = seed;
    rep.rescale_factor = factor;
    const double lg = std::log2(static_cast<double>(k));
    rep.bound = 30.0 * std::pow(lg, -0.25);
    rep.vacuous = rep.bound > rep.deviation_cap;
    rep.sampling_distance_bound = 10.0 * std::pow(lg, -0.5);
    rep.per_trial.resize(trials);

    const double dn = static_cast<double>(rep.n);
    const double dk = static_cast<double>(k);
    detail::parallel_tasks(trials, [&](std::size_t t) {
        SamplingTrial& tr = rep.per_trial[t];
        tr.seed = derive_seed(seed, t);
        PrincipalSample s = sample_principal(unit, k, tr.seed);
        tr.x = s.x;
        const auto mu_b = hermitian_eigenvalues(s.b).values;
        for (std::size_t i = 0; i < k; ++i) {
            Deviation d;
            d.i = i + 1;
            d.rhs = rep.bound;
            if (mu_b[i] >= 0.0) {
                d.clause = "i";
                d.lhs = std::abs(mu_a[i] / dn - mu_b[i] / dk);
            } else {
                d.clause = "ii";
                d.lhs = std::abs(mu_a[rep.n - k + i] / dn - mu_b[i] / dk);
            }
            tr.max_deviation = std::max(tr.max_deviation, d.lhs);
            tr.deviations.push_back(std::move(d));
        }
        tr.within_bound = tr.max_deviation < rep.bound;
        const Interlacing il = interlacing(mu_a, mu_b, fro);
        tr.interlacing_ok = within_tolerance(il.tol - il.worst, il.tol);
    });

    std::size_t within = 0;
    std::size_t interlaced = 0;
    for (const auto& tr : rep.per_trial) {
        rep.max_deviation = std::max(rep.max_deviation, tr.max_deviation);
        within += tr.within_bound ? 1 : 0;
        interlaced += tr.interlacing_ok ? 1 : 0;
    }
    rep.fraction_within = static_cast<double>(within) / static_cast<double>(trials);
    rep.interlacing_pass_rate = static_cast<double>(interlaced) / static_cast<double>(trials);
    return rep;
}

}  // namespace cutspec
