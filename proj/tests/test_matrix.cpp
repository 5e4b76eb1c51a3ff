#include "doctest.h"

#include <sstream>

#include "cutspec/errors.hpp"
#include "cutspec/matrix.hpp"
#include "cutspec/matrix_io.hpp"
#include "oracles.hpp"

using namespace cutspec;

TEST_CASE("submatrix_sum on the all-ones matrix") {
    const Matrix j = Matrix::ones(3, 3);
    CHECK(submatrix_sum(j, IndexSet(3, {0, 1}), IndexSet::full(3)) == Complex(6.0));
    CHECK(submatrix_sum(j, IndexSet(3), IndexSet::full(3)) == Complex(0.0));
}

TEST_CASE("submatrix_sum agrees with a naive double loop") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const Matrix a = oracle::random_complex(rng, 4, 4);
        const std::uint64_t xm = rng() & 15;
        const std::uint64_t ym = rng() & 15;
        const Complex got = submatrix_sum(a, IndexSet::from_mask(4, xm), IndexSet::from_mask(4, ym));
        const Complex want = oracle::naive_sum(a, xm, ym);
        CHECK(std::abs(got - want) <= 1e-12);
    }
}

TEST_CASE("full-set sum reproduces the aggregate bit for bit") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = oracle::random_complex(rng, 7, 9);
        CHECK(submatrix_sum(a, IndexSet::full(7), IndexSet::full(9)) == a.aggregates().total_sum);
    }
}

TEST_CASE("submatrix_sum is additive over disjoint column blocks") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const Matrix a = oracle::random_real(rng, 6, 8, -5.0, 5.0);
        const std::uint64_t y1 = rng() & 0xff;
        const std::uint64_t y2 = ~y1 & 0xff & rng();
        const IndexSet x = IndexSet::from_mask(6, rng() & 63);
        const Complex whole = submatrix_sum(a, x, IndexSet::from_mask(8, y1 | y2));
        const Complex parts = submatrix_sum(a, x, IndexSet::from_mask(8, y1)) + submatrix_sum(a, x, IndexSet::from_mask(8, y2));
        CHECK(std::abs(whole - parts) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
}

TEST_CASE("out-of-range indices are dimension errors") {
    CHECK_THROWS_AS(IndexSet(3, {0, 3}), DimensionError);
    CHECK_THROWS_AS(IndexSet(3, {1, 1}), DimensionError);
    const Matrix a = Matrix::ones(2, 2);
    CHECK_THROWS_AS(submatrix_sum(a, IndexSet::full(3), IndexSet::full(2)), DimensionError);
    CHECK_THROWS_AS(Matrix(0, 2), DimensionError);
}

TEST_CASE("aggregates") {
    const auto& g = Matrix::ones(2, 3).aggregates();
    CHECK(g.inf_norm == 1.0);
    CHECK(g.frobenius == doctest::Approx(std::sqrt(6.0)));
    CHECK(g.total_sum == Complex(6.0));
    CHECK(g.density == Complex(1.0));
    const auto& z = Matrix(5, 5).aggregates();
    CHECK(z.inf_norm == 0.0);
    CHECK(z.frobenius == 0.0);
    CHECK(z.total_sum == Complex(0.0));

    std::mt19937_64 rng(3);
    const Matrix a = oracle::random_complex(rng, 6, 4);
    double inf = 0.0, fro = 0.0;
    Complex sum{};
    for (auto z2 : a.entries()) {
        inf = std::max(inf, std::abs(z2));
        fro += std::norm(z2);
        sum += z2;
    }
    CHECK(a.aggregates().inf_norm == inf);
    CHECK(a.aggregates().frobenius == doctest::Approx(std::sqrt(fro)).epsilon(1e-14));
    CHECK(std::abs(a.aggregates().total_sum - sum) < 1e-13);
    CHECK(std::abs(a.aggregates().density - sum / 24.0) < 1e-14);
}

TEST_CASE("hermitian flag") {
    const Matrix h(2, 2, {Complex(1, 0), Complex(2, 3), Complex(2, -3), Complex(5, 0)});
    CHECK(h.is_hermitian());
    CHECK_FALSE(h.is_real());
    const Matrix g(2, 2, {Complex(1, 0), Complex(2, 3), Complex(2, 3), Complex(5, 0)});
    CHECK_FALSE(g.is_hermitian());
    CHECK_FALSE(Matrix::ones(2, 3).is_hermitian());
}

TEST_CASE("Matrix Market array is column-major") {
    const Matrix a = parse_matrix("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n", MatrixFormat::matrix_market);
    CHECK(a(0, 0) == Complex(1.0));
    CHECK(a(1, 0) == Complex(2.0));
    CHECK(a(0, 1) == Complex(3.0));
    CHECK(a(1, 1) == Complex(4.0));
}

TEST_CASE("Matrix Market coordinate with symmetry kinds") {
    const Matrix s = parse_matrix("%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 2\n2 1 5\n3 3 -1\n",
                                  MatrixFormat::matrix_market);
    CHECK(s(0, 1) == Complex(5.0));
    CHECK(s(1, 0) == Complex(5.0));
    CHECK(s(2, 2) == Complex(-1.0));
    CHECK(s.is_hermitian());

    const Matrix h = parse_matrix("%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 2 0\n2 1 1 1\n",
                                  MatrixFormat::matrix_market);
    CHECK(h(1, 0) == Complex(1, 1));
    CHECK(h(0, 1) == Complex(1, -1));
    CHECK(h.is_hermitian());

    const Matrix k = parse_matrix("%%MatrixMarket matrix array real skew-symmetric\n3 3\n1\n2\n3\n",
                                  MatrixFormat::matrix_market);
    CHECK(k(1, 0) == Complex(1.0));
    CHECK(k(0, 1) == Complex(-1.0));
    CHECK(k(2, 1) == Complex(3.0));

    const Matrix p = parse_matrix("%%MatrixMarket matrix coordinate pattern general\n2 3 2\n1 3\n2 1\n",
                                  MatrixFormat::matrix_market);
    CHECK(p(0, 2) == Complex(1.0));
    CHECK(p(1, 0) == Complex(1.0));
    CHECK(p(0, 0) == Complex(0.0));
}

TEST_CASE("CSV with the complex token grammar") {
    const Matrix a = parse_matrix("1,2\n3,4\n", MatrixFormat::csv);
    CHECK(a.rows() == 2);
    CHECK(a(1, 0) == Complex(3.0));
    const Matrix c = parse_matrix("1.5+2i, -i\n2i,3-0.5i\n", MatrixFormat::csv);
    CHECK(c(0, 0) == Complex(1.5, 2.0));
    CHECK(c(0, 1) == Complex(0.0, -1.0));
    CHECK(c(1, 0) == Complex(0.0, 2.0));
    CHECK(c(1, 1) == Complex(3.0, -0.5));
    CHECK(parse_complex_token("1e-3-2e+1i", 1, 1) == Complex(1e-3, -20.0));
    CHECK(parse_complex_token("+4", 1, 1) == Complex(4.0));
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_matrix("1,2\n3,x\n", MatrixFormat::csv);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_matrix("1,2\n3\n", MatrixFormat::csv), ParseError);
    CHECK_THROWS_AS(parse_matrix("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", MatrixFormat::matrix_market),
                    DimensionError);
    CHECK_THROWS_AS(parse_matrix("%%MatrixMarket matrix array real general\n2 2\n1\n2\nfoo\n4\n", MatrixFormat::matrix_market),
                    ParseError);
    CHECK_THROWS_AS(parse_matrix("hello\n", MatrixFormat::matrix_market), ParseError);
    CHECK_THROWS_AS(parse_complex_token("1+2", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_complex_token("1++2i", 1, 1), ParseError);
}

TEST_CASE("write then load round-trips exactly") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = (t % 2) ? oracle::random_complex(rng, 3, 5) : oracle::random_real(rng, 4, 2, -1e6, 1e6);
        const Matrix b = parse_matrix(to_matrix_market(a), MatrixFormat::matrix_market);
        REQUIRE(b.rows() == a.rows());
        for (std::size_t k = 0; k < a.entries().size(); ++k) CHECK(a.entries()[k] == b.entries()[k]);
    }
}

TEST_CASE("matrix algebra helpers") {
    std::mt19937_64 rng(8);
    const Matrix a = oracle::random_complex(rng, 3, 4);
    const Matrix ah = adjoint(a);
    CHECK(ah(2, 1) == std::conj(a(1, 2)));
    CHECK(transpose(transpose(a)).entries()[5] == a.entries()[5]);
    const Matrix z = a - a;
    CHECK(z.aggregates().inf_norm == 0.0);
    CHECK_THROWS_AS(a + ah, DimensionError);
    const auto [r, f] = rescale_to_unit(Complex(4.0) * Matrix::ones(2, 2));
    CHECK(f == 4.0);
    CHECK(r.aggregates().inf_norm == 1.0);
}
