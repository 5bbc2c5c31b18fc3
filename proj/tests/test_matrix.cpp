#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ginv/solve.hpp"

using namespace ginv;
using testutil::cm;
using testutil::rm;
using testutil::rq;

TEST_CASE("construction, shape, and comparison") {
    const auto a = rm({{1, 2}, {3, 4}});
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a(0, 1) == Rational(2));
    CHECK(a == rm({{1, 2}, {3, 4}}));
    CHECK_FALSE(a == rm({{1, 2}, {3, 5}}));
    CHECK(Matrix<Rational>::identity(2) == rm({{1, 0}, {0, 1}}));
    CHECK(Matrix<Rational>::zero(2, 3).is_zero());
    CHECK_THROWS_AS((Matrix<Rational>{{Rational(1)}, {Rational(1), Rational(2)}}),
                    std::invalid_argument);
}

TEST_CASE("arithmetic stays exact on rationals") {
    const auto a = rq({{"1/3", "0"}, {"0", "1/7"}});
    CHECK(a * Rational(3) == rq({{"1", "0"}, {"0", "3/7"}}));
    CHECK(a + a == rq({{"2/3", "0"}, {"0", "2/7"}}));
    CHECK(a - a == Matrix<Rational>::zero(2, 2));
    CHECK(rm({{1, 2}, {3, 4}}) * rm({{0, 1}, {1, 0}}) == rm({{2, 1}, {4, 3}}));
    CHECK(-rm({{1}}) == rm({{-1}}));
}

TEST_CASE("transpose and adjoint") {
    CHECK(rm({{1, 2}, {3, 4}}).transpose() == rm({{1, 3}, {2, 4}}));
    Matrix<Complex> c(1, 2);
    c(0, 0) = Complex(1, 2);
    c(0, 1) = Complex(0, -1);
    const auto ca = c.adjoint();
    CHECK(ca.rows() == 2);
    CHECK(ca(0, 0) == Complex(1, -2));
    CHECK(ca(1, 0) == Complex(0, 1));
}

TEST_CASE("block extraction and placement") {
    auto a = rm({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(a.block(1, 1, 2, 2) == rm({{5, 6}, {8, 9}}));
    CHECK(a.col(0) == rm({{1}, {4}, {7}}));
    CHECK(a.row(2) == rm({{7, 8, 9}}));
    a.set_block(0, 0, rm({{0, 0}, {0, 0}}));
    CHECK(a == rm({{0, 0, 3}, {0, 0, 6}, {7, 8, 9}}));
    a.swap_rows(0, 2);
    CHECK(a.row(0) == rm({{7, 8, 9}}));
}

TEST_CASE("stacking and powers") {
    CHECK(hstack(rm({{1}, {2}}), rm({{3}, {4}})) == rm({{1, 3}, {2, 4}}));
    CHECK(vstack(rm({{1, 2}}), rm({{3, 4}})) == rm({{1, 2}, {3, 4}}));
    const auto j = rm({{0, 1}, {0, 0}});
    CHECK(matrix_power(j, 0) == Matrix<Rational>::identity(2));
    CHECK(matrix_power(j, 1) == j);
    CHECK(matrix_power(j, 2).is_zero());
    CHECK(matrix_power(rm({{2}}), 10) == rm({{1024}}));
}

TEST_CASE("norms and residuals") {
    CHECK(cm({{3, 4}}).frobenius_norm() == 5.0);
    CHECK(cm({{-3, 1}}).max_abs() == 3.0);
    CHECK(rel_residual(rm({{1, 2}}), rm({{1, 2}})) == 0.0);
    CHECK(rel_residual(Matrix<Complex>::zero(2, 2), Matrix<Complex>::zero(2, 2)) == 0.0);
    // Denominator is max(1, |LHS|), so small matrices use the absolute scale.
    CHECK(rel_residual(cm({{0.5}}), cm({{0.25}})) == 0.25);
    CHECK(max_abs_diff(cm({{1, 2}}), cm({{1, 2.5}})) == 0.5);
    const auto f = to_complex(rq({{"1/2"}}));
    CHECK(f(0, 0) == Complex(0.5, 0.0));
}

TEST_CASE("linear solves and inverses, exact backend") {
    const auto a = rm({{2, 0}, {0, 3}});
    const auto x = solve_linear(a, Matrix<Rational>::identity(2));
    REQUIRE(x.has_value());
    CHECK(*x == rq({{"1/2", "0"}, {"0", "1/3"}}));
    CHECK(inverse(rm({{1, 2}, {2, 4}})) == std::nullopt);
    CHECK(inverse(rm({{0, 1}, {1, 0}})).value() == rm({{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(solve_linear(rm({{1, 2}}), rm({{1}})), std::invalid_argument);
}

TEST_CASE("linear solves, float backend") {
    const auto a = cm({{4, 1}, {1, 3}});
    const auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(rel_residual(a * *inv, Matrix<Complex>::identity(2)) < 1e-14);
    CHECK(inverse(cm({{1, 2}, {2, 4}})) == std::nullopt);
}
