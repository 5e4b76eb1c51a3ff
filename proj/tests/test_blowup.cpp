#include "doctest.h"

#include "cutspec/blowup.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/errors.hpp"
#include "oracles.hpp"

using namespace cutspec;

TEST_CASE("blow-up replaces each entry with a constant block") {
    const Matrix a = Matrix::from_real(2, 2, std::vector<double>{1, 2, 3, 4});
    const Matrix b = blowup_rect(a, 2, 3);
    REQUIRE(b.rows() == 4);
    REQUIRE(b.cols() == 6);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(b(i, j) == a(i / 2, j / 3));
    CHECK(blowup_square(a, 1).entries().size() == 4);
    CHECK_THROWS_AS(blowup_square(Matrix(2, 3), 2), DimensionError);
    CHECK_THROWS_AS(blowup_rect(a, 0, 1), PreconditionError);
    CHECK_THROWS_AS(blowup_rect(Matrix(100, 100), 40, 40), GuardRefusal);
}

TEST_CASE("blow-up composes multiplicatively and keeps the hermitian flag") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random_hermitian(rng, 1 + rng() % 4);
        const std::size_t p = 1 + rng() % 3;
        const std::size_t r = 1 + rng() % 3;
        const Matrix twice = blowup_square(blowup_square(a, p), r);
        const Matrix once = blowup_square(a, p * r);
        CHECK(frobenius_distance(twice, once) == 0.0);
        CHECK(once.is_hermitian());
    }
}

TEST_CASE("cut-norm is invariant and the boxdot norm scales by sqrt(pq)") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 30; ++t) {
        const Matrix a = oracle::random_integer(rng, 1 + rng() % 3, 1 + rng() % 3, -2, 2);
        const std::size_t p = 1 + rng() % 3;
        const std::size_t q = 1 + rng() % 3;
        const Matrix b = blowup_rect(a, p, q);
        CHECK(oracle::close(cut_norm_exact(b).value, cut_norm_exact(a).value, 1e-12));
        CHECK(oracle::close(boxdot_norm_exact(b).value, std::sqrt(double(p * q)) * boxdot_norm_exact(a).value, 1e-12));
    }
}

TEST_CASE("blow-up eigenvalues are k mu_i padded with zeros") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const Matrix a = t % 2 ? oracle::random_hermitian(rng, 1 + rng() % 5) : oracle::random_symmetric(rng, 1 + rng() % 5);
        const std::size_t k = 1 + rng() % 3;
        const auto r = check_blowup_spectrum_hermitian(a, k);
        CHECK(r.name == "pro1");
        CHECK(r.holds);
        // Independent oracle on the blown-up matrix.
        auto want = oracle::hermitian_eigenvalues(a);
        for (auto& v : want) v *= double(k);
        want.resize(a.rows() * k, 0.0);
        std::sort(want.rbegin(), want.rend());
        const auto got = oracle::hermitian_eigenvalues(blowup_square(a, k));
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9 * double(k) * (1.0 + a.aggregates().frobenius));
    }
    CHECK_THROWS_AS(check_blowup_spectrum_hermitian(Matrix::from_real(1, 2, std::vector<double>{1, 2}), 2), PreconditionError);
}

TEST_CASE("rectangular blow-up singular values scale by sqrt(pq)") {
    const auto j = check_blowup_spectrum_rect(Matrix::ones(2, 2), 2, 2);
    CHECK(j.holds);
    CHECK(j.details["singular_values"][0].get<double>() == doctest::Approx(4.0));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const Matrix a = t % 2 ? oracle::random_complex(rng, 1 + rng() % 4, 1 + rng() % 5)
                               : oracle::random_real(rng, 1 + rng() % 4, 1 + rng() % 5);
        const auto r = check_blowup_spectrum_rect(a, 1 + rng() % 3, 1 + rng() % 3);
        CHECK(r.holds);
    }
    const Matrix a = oracle::random_real(rng, 3, 5);
    const auto same = check_blowup_spectrum_rect(a, 1, 1);
    CHECK(same.lhs <= 1e-12);
}

TEST_CASE("eigenvalue ratio chains hold, including negative spectra") {
    const auto id = check_blowup_eigen_ratio(Matrix::identity(3), 2);
    CHECK(id.holds);
    CHECK(id.details["per_index"][0]["head"].get<double>() == doctest::Approx(0.0));

    const auto neg = check_blowup_eigen_ratio(-Matrix::identity(4), 2);
    CHECK(neg.holds);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const Matrix a = t % 2 ? oracle::random_hermitian(rng, 1 + rng() % 5) : oracle::random_symmetric(rng, 1 + rng() % 5);
        const auto r = check_blowup_eigen_ratio(a, 1 + rng() % 3);
        CHECK(r.holds);
        for (const auto& row : r.details["per_index"]) CHECK(row["holds"].get<bool>());
    }
}
