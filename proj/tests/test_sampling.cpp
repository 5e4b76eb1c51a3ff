#include "doctest.h"

#include <map>

#include "cutspec/errors.hpp"
#include "cutspec/sampling.hpp"
#include "cutspec/spectral.hpp"
#include "oracles.hpp"

using namespace cutspec;

TEST_CASE("principal samples at the extremes") {
    std::mt19937_64 rng(1);
    const Matrix a = oracle::random_hermitian(rng, 5);
    const auto full = sample_principal(a, 5, 3);
    CHECK(full.x == IndexSet::full(5));
    CHECK(frobenius_distance(full.b, a) == 0.0);
    CHECK(full.b.is_hermitian());
    const auto one = sample_principal(a, 1, 4);
    REQUIRE(one.x.size() == 1);
    CHECK(one.b(0, 0) == a(one.x.members()[0], one.x.members()[0]));
    CHECK_THROWS_AS(sample_principal(a, 0, 1), PreconditionError);
    CHECK_THROWS_AS(sample_principal(a, 6, 1), PreconditionError);
}

TEST_CASE("subsets are uniform") {
    // 20 subsets of size 3 from 6; chi-square critical value 43.82 at 19 dof, p = 0.001.
    Rng rng = make_rng(123, 0);
    std::map<std::vector<std::size_t>, int> counts;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) ++counts[sample_subset(6, 3, rng).one_based()];
    REQUIRE(counts.size() == 20);
    double chi2 = 0.0;
    const double expected = draws / 20.0;
    for (const auto& [s, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 43.82);
}

TEST_CASE("interlacing") {
    std::mt19937_64 rng(2);
    const std::vector<Complex> d{3.0, -1.0, 2.0, 0.5};
    const Matrix diag = Matrix::diagonal(d);
    const auto s = sample_principal(diag, 2, 9);
    CHECK(check_interlacing(diag, s.b, s.x).holds);

    const Matrix a = oracle::random_symmetric(rng, 12);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto p = sample_principal(a, 5, seed);
        const auto r = check_interlacing(a, p.b, p.x);
        CHECK(r.holds);
        CHECK(r.name == "interlacing");
    }
    const auto all = check_interlacing(a, a, IndexSet::full(12));
    CHECK(all.holds);
    CHECK(std::abs(all.lhs) <= 1e-12);
    const auto p = sample_principal(a, 5, 1);
    CHECK_THROWS_AS(check_interlacing(a, Matrix::identity(5), p.x), PreconditionError);
}

TEST_CASE("deviations are invariant under relabelling") {
    std::mt19937_64 rng(3);
    const Matrix a = oracle::random_symmetric(rng, 7);
    std::vector<std::size_t> perm{3, 0, 6, 1, 5, 2, 4};
    const Matrix pa = permuted(a, perm, perm);  // pa(i, j) = a(perm[i], perm[j])
    const IndexSet x(7, {0, 2, 5});
    std::vector<std::size_t> relabelled;
    for (std::size_t i = 0; i < 7; ++i)
        if (x.contains(perm[i])) relabelled.push_back(i);
    const IndexSet y(7, relabelled);
    const auto ea = hermitian_eigenvalues(submatrix(a, x, x)).values;
    const auto eb = hermitian_eigenvalues(submatrix(pa, y, y)).values;
    for (std::size_t i = 0; i < 3; ++i) CHECK(ea[i] == doctest::Approx(eb[i]).epsilon(1e-12));
}

TEST_CASE("sampling experiment") {
    std::mt19937_64 rng(4);
    const Matrix a = oracle::random_symmetric(rng, 20);
    const auto same = run_ssamp_experiment(a, 20, 3, 7);
    CHECK(same.max_deviation == 0.0);
    CHECK(same.vacuous);

    const auto r = run_ssamp_experiment(2.0 * a, 8, 25, 11);
    CHECK(r.rescale_factor > 1.0);
    CHECK(r.vacuous);
    CHECK(r.bound > 2.0);
    CHECK(r.max_deviation <= 2.0);
    CHECK(r.fraction_within == 1.0);
    CHECK(r.interlacing_pass_rate == 1.0);
    REQUIRE(r.per_trial.size() == 25);
    for (const auto& t : r.per_trial) CHECK(t.deviations.size() == 8);

    const auto again = run_ssamp_experiment(2.0 * a, 8, 25, 11);
    for (std::size_t t = 0; t < 25; ++t) {
        CHECK(again.per_trial[t].x == r.per_trial[t].x);
        CHECK(again.per_trial[t].max_deviation == r.per_trial[t].max_deviation);
    }
    // A trial replays through sample_principal with its recorded seed.
    const auto replay = sample_principal(rescale_to_unit(2.0 * a).first, 8, r.per_trial[3].seed);
    CHECK(replay.x == r.per_trial[3].x);

    CHECK_THROWS_AS(run_ssamp_experiment(oracle::random_hermitian(rng, 4), 2, 1, 0), PreconditionError);
    CHECK_THROWS_AS(run_ssamp_experiment(a, 1, 1, 0), PreconditionError);
}
