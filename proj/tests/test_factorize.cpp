#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ginv/detail/rng.hpp"
#include "ginv/factorize.hpp"

using namespace ginv;
using testutil::cm;
using testutil::rm;

TEST_CASE("rank factorization of a rank-one matrix, exact") {
    const auto fact = rank_factorize(rm({{1, 2}, {2, 4}}));
    CHECK(fact.rank == 1);
    CHECK(fact.f == rm({{1}, {2}}));
    CHECK(fact.g == rm({{1, 2}}));
    CHECK(fact.f * fact.g == rm({{1, 2}, {2, 4}}));
}

TEST_CASE("rank factorization edge shapes") {
    const auto id = rank_factorize(Matrix<Rational>::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.f == Matrix<Rational>::identity(3));
    CHECK(id.g == Matrix<Rational>::identity(3));

    const auto zero = rank_factorize(Matrix<Rational>::zero(2, 2));
    CHECK(zero.rank == 0);
    CHECK(zero.f.cols() == 0);
    CHECK(zero.g.rows() == 0);

    const auto zf = rank_factorize(Matrix<Complex>::zero(2, 3));
    CHECK(zf.rank == 0);
}

TEST_CASE("reconstruction property on random matrices") {
    detail::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = detail::random_entry_matrix<Rational>(rng, 4, 6);
        const auto fact = rank_factorize(a);
        CHECK(fact.f * fact.g == a);
        CHECK(rank_of(fact.f) == fact.rank);
        CHECK(rank_of(fact.g) == fact.rank);
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = detail::random_entry_matrix<Complex>(rng, 5, 3);
        const auto fact = rank_factorize(a);
        CHECK(rel_residual(fact.f * fact.g, a) < 1e-12);
    }
}

TEST_CASE("rank respects the relative threshold on floats") {
    CHECK(rank_of(cm({{1, 0}, {0, 1e-14}})) == 1);
    CHECK(rank_of(cm({{1, 0}, {0, 1e-6}})) == 2);
    // Thresholds are relative to the matrix's own scale, not absolute.
    CHECK(rank_of(cm({{1e-20, 0}, {0, 1e-24}})) == 2);
    CHECK(rank_of(Matrix<Complex>::zero(3, 3)) == 0);
}

TEST_CASE("rank decisions inside the ambiguity band are refused") {
    TolerancePolicy pol;
    pol.ambiguity_factor = 10.0;
    CHECK_THROWS_AS(rank_of(cm({{1, 0}, {0, 3e-10}}), pol), NumericalError);
    CHECK(rank_of(cm({{1, 0}, {0, 3e-10}})) == 2); // no band by default
    CHECK(rank_of(cm({{1, 0}, {0, 1e-3}}), pol) == 2);
    CHECK(rank_of(cm({{1, 0}, {0, 1e-14}}), pol) == 1);
}

TEST_CASE("kernel basis spans the nullspace") {
    const auto kb = kernel_basis_matrix(rm({{2, 0}, {1, 0}}));
    CHECK(kb == rm({{0}, {1}}));
    CHECK(kernel_basis_matrix(Matrix<Rational>::identity(3)).cols() == 0);

    detail::Rng rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        const auto a = detail::random_entry_matrix<Rational>(rng, 3, 5);
        const auto k = kernel_basis_matrix(a);
        CHECK(rank_of(a) + k.cols() == a.cols());
        CHECK((a * k).is_zero());
    }
    for (int trial = 0; trial < 15; ++trial) {
        const auto a = detail::random_entry_matrix<Complex>(rng, 3, 5);
        const auto k = kernel_basis_matrix(a);
        CHECK(rank_of(a) + k.cols() == a.cols());
        CHECK((a * k).max_abs() < 1e-12);
        CHECK(rank_of(k) == k.cols());
    }
}

TEST_CASE("orthonormal_columns yields a deterministic unitary basis") {
    detail::Rng rng(3);
    const auto basis = detail::random_entry_matrix<Complex>(rng, 5, 3);
    const auto q1 = orthonormal_columns(basis);
    const auto q2 = orthonormal_columns(basis);
    CHECK(q1 == q2);
    CHECK(rel_residual(q1.adjoint() * q1, Matrix<Complex>::identity(3)) < 1e-13);
    CHECK(rank_of(hstack(basis, q1)) == 3);
}
