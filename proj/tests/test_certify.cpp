#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ginv/detail/rng.hpp"

using namespace ginv;
using testutil::along2;
using testutil::rm;
using testutil::shift2;

TEST_CASE("kind names round trip") {
    for (auto kind : {InverseKind::INNER, InverseKind::OUTER, InverseKind::REFLEXIVE,
                      InverseKind::MOORE_PENROSE, InverseKind::GROUP, InverseKind::DRAZIN,
                      InverseKind::PQ, InverseKind::MARY})
        CHECK(parse_kind(kind_name(kind)) == kind);
    CHECK_FALSE(parse_kind("frobnicate").has_value());
}

TEST_CASE("worked 2x2 certificate passes with zero residuals") {
    const auto a = shift2<Rational>();
    const auto b = rm({{2, 0}, {1, 0}});
    CertifyContext<Rational> ctx;
    ctx.along = along2<Rational>(1);
    const auto cert = certify(a, b, InverseKind::MARY, ctx);
    CHECK(cert.pass);
    CHECK(cert.tolerance == 0.0);
    REQUIRE(cert.identities.count("BAB=B") == 1);
    CHECK(cert.identities.at("BAB=B") == 0.0);
    CHECK(cert.subspace_checks.at("R(B)=R(T)"));
    CHECK(cert.subspace_checks.at("N(B)=N(T)"));
    CHECK_THROWS_AS(certify(a, b, InverseKind::MARY), std::invalid_argument);
}

TEST_CASE("identity lists are fixed per kind") {
    const auto id = Matrix<Rational>::identity(2);
    CHECK(certify(id, id, InverseKind::GROUP).pass);

    const auto grp = certify(id, id, InverseKind::GROUP);
    CHECK(grp.identities.count("ABA=A") == 1);
    CHECK(grp.identities.count("BAB=B") == 1);
    CHECK(grp.identities.count("AB=BA") == 1);

    const auto dz = certify(shift2<Rational>(), Matrix<Rational>::zero(2, 2),
                            InverseKind::DRAZIN);
    CHECK(dz.pass);
    CHECK(dz.identities.count("A^n=A^nBA") == 1);

    CertifyContext<Rational> pq_ctx;
    pq_ctx.p = rm({{0, 2}, {0, 1}});
    pq_ctx.q = rm({{0, 0}, {0, 1}});
    const auto pq = certify(shift2<Rational>(), rm({{2, 0}, {1, 0}}), InverseKind::PQ, pq_ctx);
    CHECK(pq.pass);
    CHECK(pq.identities.count("BA=p") == 1);
    CHECK(pq.identities.count("I−AB=q") == 1);
    CHECK_THROWS_AS(certify(shift2<Rational>(), rm({{2, 0}, {1, 0}}), InverseKind::PQ),
                    std::invalid_argument);

    const auto mp = certify(shift2<Rational>(), rm({{0, 0}, {1, 0}}),
                            InverseKind::MOORE_PENROSE);
    CHECK(mp.pass);
    CHECK(mp.identities.count("(AB)*=AB") == 1);
    CHECK(mp.identities.count("(BA)*=BA") == 1);
}

TEST_CASE("certification is sound on computed inverses") {
    detail::Rng rng(131);
    for (int trial = 0; trial < 8; ++trial) {
        const auto pair = plant_along_pair<Rational>(4, 2, rng.word());
        const auto b = inverse_along(pair.a, pair.d).matrix();
        CertifyContext<Rational> ctx;
        ctx.along = pair.d;
        CHECK(certify(pair.a, b, InverseKind::MARY, ctx).pass);

        const auto a = detail::random_entry_matrix<Rational>(rng, 3, 4);
        CHECK(certify(a, moore_penrose(a), InverseKind::MOORE_PENROSE).pass);
        CHECK(certify(a, inner_inverse(a), InverseKind::INNER).pass);

        const auto fpair = plant_along_pair<Complex>(4, 2, rng.word());
        const auto fb = inverse_along(fpair.a, fpair.d).matrix();
        CertifyContext<Complex> fctx;
        fctx.along = fpair.d;
        const auto fcert = certify(fpair.a, fb, InverseKind::MARY, fctx);
        CHECK(fcert.pass);
        CHECK(fcert.tolerance == 1e-9);

        const auto grp = group_inverse(fpair.a * fpair.d);
        REQUIRE(grp.exists());
        CHECK(certify(fpair.a * fpair.d, grp.matrix(), InverseKind::GROUP).pass);

        const auto dres = drazin_inverse(fpair.a);
        CHECK(certify(fpair.a, dres.b, InverseKind::DRAZIN).pass);

        CertifyContext<Complex> octx;
        octx.range = range_basis(fpair.d);
        octx.nullsp = nullspace_basis(fpair.d);
        const auto ocert = certify(fpair.a, fb, InverseKind::OUTER, octx);
        CHECK(ocert.pass);
        CHECK(ocert.subspace_checks.at("R(B)=M"));
        CHECK(ocert.subspace_checks.at("N(B)=N"));
    }
}

TEST_CASE("certification discriminates planted violations") {
    const auto a = testutil::cm({{0, 1}, {0, 0}});
    const auto good = testutil::cm({{2, 0}, {1, 0}});
    CertifyContext<Complex> ctx;
    ctx.along = along2<Complex>(1);

    auto small = good;
    small(0, 1) += Complex(1e-6, 0);
    const auto cert_small = certify(a, small, InverseKind::MARY, ctx);
    CHECK_FALSE(cert_small.pass);
    double max_res = 0.0;
    for (const auto& [name, r] : cert_small.identities) max_res = std::max(max_res, r);
    CHECK(max_res > 1e-7);
    CHECK(max_res < 1e-5);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto pair = plant_along_pair<Complex>(4, 2, seed);
        auto b = inverse_along(pair.a, pair.d).matrix();
        detail::Rng rng(seed * 17 + 1);
        b(rng.word() % 4, rng.word() % 4) += Complex(1e-3, 0);
        CertifyContext<Complex> pctx;
        pctx.along = pair.d;
        CHECK_FALSE(certify(pair.a, b, InverseKind::MARY, pctx).pass);
    }
}

TEST_CASE("witness certificate carries a valid reflexive witness") {
    const auto cert = along_witness_certificate(shift2<Rational>(), along2<Rational>(1));
    CHECK(cert.pass);
    for (const char* name : {"tDt=t", "DtD=D", "BA=Dt", "AB=tD", "BAB=B"})
        CHECK(cert.identities.at(name) == 0.0);
    CHECK(cert.witnesses.at("t") == rm({{0, 1}, {0, 0}}));
    CHECK(cert.witnesses.at("p") == rm({{0, 2}, {0, 1}}));
    CHECK(cert.witnesses.at("q") == rm({{0, 0}, {0, 1}}));

    const auto trivial = along_witness_certificate(Matrix<Rational>::identity(2),
                                                   Matrix<Rational>::identity(2));
    CHECK(trivial.pass);
    CHECK(trivial.witnesses.at("t") == Matrix<Rational>::identity(2));

    for (std::uint64_t seed = 3; seed <= 8; ++seed) {
        const auto pair = plant_along_pair<Rational>(4, 2, seed);
        CHECK(along_witness_certificate(pair.a, pair.d).pass);
        const auto neg = plant_along_negative<Rational>(4, 2, seed, 0);
        CHECK_THROWS_AS(along_witness_certificate(neg.a, neg.d), std::invalid_argument);
    }
}

TEST_CASE("planted pairs are deterministic and honor their contract") {
    const auto p1 = plant_along_pair<Rational>(5, 2, 42);
    const auto p2 = plant_along_pair<Rational>(5, 2, 42);
    CHECK(p1.a == p2.a);
    CHECK(p1.d == p2.d);
    CHECK(rank_of(p1.d) == 2);

    const auto full = plant_along_pair<Rational>(3, 3, 9);
    CHECK(inverse(full.a).has_value());
    CHECK(inverse(full.d).has_value());
    CHECK(inverse_along(full.a, full.d).matrix() == inverse(full.a).value());

    CHECK_THROWS_AS(plant_along_pair<Rational>(3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(plant_along_pair<Rational>(3, 4, 1), std::invalid_argument);

    const auto f1 = plant_along_pair<Complex>(4, 2, 11);
    const auto f2 = plant_along_pair<Complex>(4, 2, 11);
    CHECK(f1.a == f2.a);
    CHECK(diagnose_along(f1.a, f1.d).exists);
}
