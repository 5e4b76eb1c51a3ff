#include "doctest.h"

#include "cutspec/blowup.hpp"
#include "cutspec/cut_distance.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/errors.hpp"
#include "oracles.hpp"

using namespace cutspec;

namespace {

Matrix random_integer_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = double(int(rng() % 5) - 2);
    return Matrix(n, n, std::move(e));
}

Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return Permutation(p);
}

DistanceOptions exact() {
    DistanceOptions o;
    o.method = DistanceMethod::exact;
    return o;
}

void check_witness(const Matrix& a, const Matrix& b, const DistanceResult& r) {
    const Permutation& q = r.perm_Q ? *r.perm_Q : r.perm_P;
    const double at = cut_norm_exact(permuted_difference(a, b, r.perm_P, q)).value;
    CHECK(oracle::close(r.value, at, 1e-9));
}

}  // namespace

TEST_CASE("permutations validate and invert") {
    const Permutation p({2, 0, 1});
    CHECK(p.inverse().map() == std::vector<std::size_t>{1, 2, 0});
    CHECK_THROWS_AS(Permutation({0, 0}), PreconditionError);
    CHECK_THROWS_AS(Permutation({0, 2}), PreconditionError);
}

TEST_CASE("distance to itself and to relabelled copies is zero") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const Matrix a = t % 2 ? oracle::random_hermitian(rng, n) : oracle::random_symmetric(rng, n);
        const auto self = delta_hat_square(a, a, exact());
        CHECK(self.value == 0.0);
        CHECK(self.perm_P == Permutation::identity(n));
        const Permutation p = random_permutation(rng, n);
        const Matrix c = permuted(a, p.map(), p.map());
        CHECK(delta_hat_square(a, c, exact()).value == 0.0);
        CHECK(delta_hat_boxminus(a, c, exact()).value == 0.0);
    }
}

TEST_CASE("exact square distance matches brute-force permutation search") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const Matrix a = t % 3 == 0 ? oracle::random_hermitian(rng, n) : random_integer_symmetric(rng, n);
        const Matrix b = t % 3 == 0 ? oracle::random_hermitian(rng, n) : random_integer_symmetric(rng, n);
        const auto r = delta_hat_square(a, b, exact());
        CHECK(oracle::close(r.value, oracle::brute_delta(a, b, true), 1e-12));
        CHECK(r.bound_kind == BoundKind::exact_at_k);
        check_witness(a, b, r);
        // Symmetric in its arguments.
        CHECK(oracle::close(delta_hat_square(b, a, exact()).value, r.value, 1e-12));
    }
}

TEST_CASE("exact boxminus distance matches brute force over permutation pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = 1 + rng() % 3;
        const std::size_t n = 1 + rng() % 4;
        const Matrix a = t % 2 ? oracle::random_complex(rng, m, n) : oracle::random_integer(rng, m, n, -2, 2);
        const Matrix b = t % 2 ? oracle::random_complex(rng, m, n) : oracle::random_integer(rng, m, n, -2, 2);
        const auto r = delta_hat_boxminus(a, b, exact());
        CHECK(oracle::close(r.value, oracle::brute_delta(a, b, false), 1e-12));
        REQUIRE(r.perm_Q.has_value());
        check_witness(a, b, r);
        CHECK(oracle::close(delta_hat_boxminus(b, a, exact()).value, r.value, 1e-12));
    }
}

TEST_CASE("boxminus never exceeds square on Hermitian pairs") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const Matrix a = oracle::random_symmetric(rng, n);
        const Matrix b = oracle::random_symmetric(rng, n);
        CHECK(delta_hat_boxminus(a, b, exact()).value <= delta_hat_square(a, b, exact()).value + 1e-9);
    }
}

TEST_CASE("triangle inequality at fixed size") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const Matrix a = oracle::random_symmetric(rng, n);
        const Matrix b = oracle::random_symmetric(rng, n);
        const Matrix c = oracle::random_symmetric(rng, n);
        const double ab = delta_hat_square(a, b, exact()).value;
        const double ac = delta_hat_square(a, c, exact()).value;
        const double cb = delta_hat_square(c, b, exact()).value;
        CHECK(ab <= ac + cb + 1e-9);
        const double xab = delta_hat_boxminus(a, b, exact()).value;
        const double xac = delta_hat_boxminus(a, c, exact()).value;
        const double xcb = delta_hat_boxminus(c, b, exact()).value;
        CHECK(xab <= xac + xcb + 1e-9);
    }
}

TEST_CASE("annealing never beats the exact minimum and is deterministic") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = oracle::random_hermitian(rng, 5);
        const Matrix b = oracle::random_hermitian(rng, 5);
        DistanceOptions opts;
        opts.method = DistanceMethod::anneal;
        opts.seed = 99;
        opts.proposals = 400;
        const auto an = delta_hat_square(a, b, opts);
        CHECK(an.method == DistanceMethod::anneal);
        CHECK(an.bound_kind == BoundKind::upper_bound);
        CHECK(an.value >= delta_hat_square(a, b, exact()).value - 1e-9);
        check_witness(a, b, an);
        const auto again = delta_hat_square(a, b, opts);
        CHECK(again.value == an.value);
        CHECK(again.perm_P == an.perm_P);

        const auto bx = delta_hat_boxminus(a, b, opts);
        CHECK(bx.value >= delta_hat_boxminus(a, b, exact()).value - 1e-9);
        check_witness(a, b, bx);
    }
}

TEST_CASE("exact search refuses above the table guard") {
    std::mt19937_64 rng(17);
    const Matrix a = oracle::random_symmetric(rng, 10);
    const Matrix b = oracle::random_symmetric(rng, 10);
    CHECK_THROWS_AS(delta_hat_square(a, b, exact()), GuardRefusal);
    DistanceOptions automatic;
    automatic.proposals = 200;
    automatic.restarts = 1;
    CHECK(delta_hat_square(a, b, automatic).method == DistanceMethod::anneal);
    CHECK_THROWS_AS(delta_hat_square(a, Matrix::identity(3)), DimensionError);
    CHECK_THROWS_AS(delta_hat_square(oracle::random_real(rng, 3, 3), oracle::random_symmetric(rng, 3)), PreconditionError);
}

TEST_CASE("blow-up estimates for different sizes") {
    std::mt19937_64 rng(18);
    SUBCASE("H_2 against H_3 at k=1 equals brute force over 720 permutations") {
        const Matrix a = random_integer_symmetric(rng, 2);
        const Matrix b = random_integer_symmetric(rng, 3);
        const auto seq = delta_square_estimate(a, b, 1, exact());
        REQUIRE(seq.size() == 1);
        CHECK(seq[0].rows == 6);
        CHECK(oracle::close(seq[0].value, oracle::brute_delta(blowup_square(a, 3), blowup_square(b, 2), true), 1e-12));
    }
    SUBCASE("a blow-up is at distance zero from its base") {
        const Matrix b = oracle::random_symmetric(rng, 3);
        const Matrix a = blowup_square(b, 2);
        for (const auto& r : delta_square_estimate(a, b, 3)) {
            CHECK(r.value == 0.0);
            CHECK(r.bound_kind == BoundKind::exact_at_k);
        }
        for (const auto& r : delta_boxminus_estimate(a, b, 2)) CHECK(r.value == 0.0);
    }
    SUBCASE("rectangular pair at k=1 matches brute force") {
        const Matrix a = oracle::random_integer(rng, 1, 2, -2, 2);
        const Matrix b = oracle::random_integer(rng, 2, 3, -2, 2);
        const auto seq = delta_boxminus_estimate(a, b, 2);
        REQUIRE(seq.size() == 2);
        CHECK(oracle::close(seq[0].value,
                            oracle::brute_delta(blowup_rect(a, 2, 3), blowup_rect(b, 1, 2), false), 1e-12));
        CHECK(seq[1].blowup_k == 2);
        CHECK(seq[1].rows == 4);
        CHECK(seq[1].cols == 12);
    }
}
