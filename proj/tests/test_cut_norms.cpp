#include "doctest.h"

#include "cutspec/cut_norms.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/witnesses.hpp"
#include "oracles.hpp"

using namespace cutspec;

TEST_CASE("exact norms of simple matrices") {
    const auto z = cut_norm_exact(Matrix(3, 4));
    CHECK(z.value == 0.0);
    CHECK(z.x.empty());
    CHECK(z.y.empty());
    CHECK(z.certified);

    const auto j = cut_norm_exact(Matrix::ones(3, 5));
    CHECK(j.value == doctest::Approx(1.0));
    CHECK(j.x == IndexSet::full(3));
    CHECK(j.y == IndexSet::full(5));

    const auto jb = boxdot_norm_exact(Matrix::ones(3, 5));
    CHECK(jb.value == doctest::Approx(std::sqrt(15.0)));
}

TEST_CASE("star witness n=2 has cut-norm 4/25") {
    const auto r = cut_norm_exact(star_witness(2));
    CHECK(r.value * 25.0 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("exact norms equal double enumeration on small integer matrices") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        const std::size_t m = 1 + rng() % 5;
        const std::size_t n = 1 + rng() % 6;
        const Matrix a = oracle::random_integer(rng, m, n, -2, 2);
        const auto sq = cut_norm_exact(a);
        const auto bd = boxdot_norm_exact(a);
        CHECK(oracle::close(sq.value, oracle::brute_square(a), 1e-12));
        CHECK(oracle::close(bd.value, oracle::brute_boxdot(a), 1e-12));
        CHECK(oracle::close(sq.value, norm_objective(a, NormKind::square, sq.x, sq.y), 1e-12));
        CHECK(oracle::close(bd.value, norm_objective(a, NormKind::boxdot, bd.x, bd.y), 1e-12));
    }
}

TEST_CASE("exact complex norms equal double enumeration") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 150; ++t) {
        const std::size_t m = 1 + rng() % 5;
        const std::size_t n = 1 + rng() % 6;
        const Matrix a = oracle::random_complex(rng, m, n);
        CHECK(oracle::close(cut_norm_exact(a).value, oracle::brute_square(a), 1e-12));
        CHECK(oracle::close(boxdot_norm_exact(a).value, oracle::brute_boxdot(a), 1e-12));
    }
    // Gaussian-integer entries create many collinear and tied column sums.
    for (int t = 0; t < 150; ++t) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 6;
        std::vector<Complex> e(m * n);
        for (auto& z : e) z = Complex(static_cast<double>(rng() % 3) - 1.0, static_cast<double>(rng() % 3) - 1.0);
        const Matrix a(m, n, e);
        CHECK(oracle::close(cut_norm_exact(a).value, oracle::brute_square(a), 1e-12));
        CHECK(oracle::close(boxdot_norm_exact(a).value, oracle::brute_boxdot(a), 1e-12));
    }
}

TEST_CASE("inner closed form equals enumeration over Y for every X") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random_real(rng, 6, 8);
        for (std::uint64_t x = 0; x < 64; ++x) {
            double brute = 0.0;
            for (std::uint64_t y = 0; y < 256; ++y) brute = std::max(brute, std::abs(oracle::naive_sum(a, x, y)));
            double pos = 0.0, neg = 0.0;
            for (std::size_t j = 0; j < 8; ++j) {
                const double c = oracle::naive_sum(a, x, 1ULL << j).real();
                (c > 0 ? pos : neg) += std::abs(c);
            }
            CHECK(oracle::close(std::max(pos, neg), brute, 1e-12));
        }
    }
}

TEST_CASE("transposed inputs give the same value") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 30; ++t) {
        const Matrix a = oracle::random_integer(rng, 6, 3, -2, 2);
        CHECK(oracle::close(cut_norm_exact(a).value, cut_norm_exact(transpose(a)).value, 1e-12));
        CHECK(oracle::close(boxdot_norm_exact(a).value, boxdot_norm_exact(transpose(a)).value, 1e-12));
    }
}

TEST_CASE("norm axioms") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
        const bool cplx = t % 2 == 1;
        const Matrix a = cplx ? oracle::random_complex(rng, 5, 5) : oracle::random_real(rng, 5, 5);
        const Matrix b = cplx ? oracle::random_complex(rng, 5, 5) : oracle::random_real(rng, 5, 5);
        const Complex c = cplx ? Complex(-1.5, 2.0) : Complex(-3.0);
        for (NormKind k : {NormKind::square, NormKind::boxdot}) {
            const double na = norm_exact(a, k).value;
            CHECK(oracle::close(norm_exact(c * a, k).value, std::abs(c) * na, 1e-9));
            CHECK(norm_exact(a + b, k).value <= na + norm_exact(b, k).value + 1e-9);
        }
        CHECK(cut_norm_exact(a).value <= boxdot_norm_exact(a).value / 5.0 + 1e-9);
    }
}

TEST_CASE("exact limit refuses") {
    CHECK_THROWS_AS(cut_norm_exact(Matrix::ones(4, 4), ExactOptions{3}), GuardRefusal);
}

TEST_CASE("heuristic is a lower bound and deterministic") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        const Matrix a = t % 2 ? oracle::random_complex(rng, 5, 6) : oracle::random_integer(rng, 6, 5, -2, 2);
        for (NormKind k : {NormKind::square, NormKind::boxdot}) {
            const auto h = cut_norm_heuristic(a, k, {static_cast<std::uint64_t>(t), 4});
            CHECK_FALSE(h.certified);
            CHECK(h.value <= norm_exact(a, k).value + 1e-9);
            const auto h2 = cut_norm_heuristic(a, k, {static_cast<std::uint64_t>(t), 4});
            CHECK(h.value == h2.value);
            CHECK(h.x == h2.x);
            CHECK(h.y == h2.y);
        }
    }
    CHECK(cut_norm_heuristic(Matrix::ones(50, 50), NormKind::square, {1, 1}).value == doctest::Approx(1.0));
}

TEST_CASE("angle grid is a lower bound") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random_complex(rng, 4, 5);
        for (NormKind k : {NormKind::square, NormKind::boxdot}) {
            const auto g = cut_norm_angle_grid(a, k);
            CHECK(g.method == NormMethod::angle_grid);
            CHECK(g.value <= norm_exact(a, k).value + 1e-9);
            CHECK(g.value >= 0.5 * norm_exact(a, k).value);
        }
    }
}

TEST_CASE("rank-one route agrees with enumeration") {
    for (std::size_t n : {4, 8, 12}) {
        const Matrix h = hilbertish_witness(n);
        for (NormKind k : {NormKind::square, NormKind::boxdot}) {
            const auto r = norm_rank_one(h, k);
            CHECK(r.certified);
            CHECK(r.upper_bound >= r.value);
            CHECK(oracle::close(r.value, norm_exact(h, k).value, 1e-9));
        }
    }
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(norm_rank_one(oracle::random_real(rng, 4, 4), NormKind::square), GuardRefusal);
}

TEST_CASE("le1 bilinear bound") {
    const Matrix j = Matrix::ones(2, 2);
    std::vector<Complex> one{1.0, 1.0};
    const auto r = bilinear_form_bound_check(j, one, one, cut_norm_exact(j));
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.rhs == doctest::Approx(16.0));
    CHECK(r.holds);

    std::mt19937_64 rng(12);
    const Matrix a = oracle::random_complex(rng, 5, 5);
    const auto sq = cut_norm_exact(a);
    for (int t = 0; t < 200; ++t) {
        std::vector<Complex> x(5), y(5);
        for (auto& z : x) z = std::polar(1.0, oracle::random_real(rng, 1, 1)(0, 0).real() * 3.2);
        for (auto& z : y) z = std::polar(1.0, oracle::random_real(rng, 1, 1)(0, 0).real() * 3.2);
        const auto b = bilinear_form_bound_check(a, x, y, sq);
        CHECK(b.constant_used == 16.0);
        CHECK(b.holds);
    }
    CHECK_THROWS_AS(bilinear_form_bound_check(a, one, one, sq), DimensionError);
    CHECK_THROWS_AS(bilinear_form_bound_check(a, std::vector<Complex>(5), std::vector<Complex>(5),
                                              cut_norm_heuristic(a, NormKind::square)),
                    GuardRefusal);
}
