#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ssv/enumerate.hpp"
#include "ssv/search.hpp"

using namespace ssv;

namespace {

LatVec basis(int rank, int i, Int a = 1) {
    LatVec v(rank, 0);
    v[i] = a;
    return v;
}

// Primitive, coprime-to-p vectors with positive rank, reproducibly sampled.
// Modulo on raw rng output keeps the stream identical across platforms.
MukaiVector sample_vector(std::mt19937_64& rng, const IntLattice& ns, Int p) {
    for (;;) {
        MukaiVector v;
        v.r = 1 + (Int)(rng() % 20);
        v.c1.resize(ns.rank);
        for (auto& c : v.c1) c = (Int)(rng() % 11) - 5;
        v.s = (Int)(rng() % 41) - 20;
        if (is_mukai_primitive(v) && coprime_to_p_raw(ns, v, p)) return v;
    }
}

}  // namespace

TEST_CASE("elliptic witness on a vector that is already normalized") {
    auto A = build_abelian_ns(5, 1);
    MukaiVector v{2, basis(6, 1), 0};   // c1 = f2, primitive from the start
    auto wit = find_elliptic_class(A.ns, v, 5);
    CHECK(wit.chain.empty());
    CHECK(wit.v_out == v);
    // f2 itself has c1.x = 0; the canonically first usable class mixes in f1.
    CHECK(wit.x == LatVec{1, -1, -1, 0, 0, 0});
    CHECK(wit.height_used == 1);
    validate_elliptic_witness(A.ns, v, 5, wit);
}

TEST_CASE("rank-1 Mukai vectors accept the first isotropic class") {
    auto A = build_abelian_ns(5, 1);
    MukaiVector v{1, LatVec(6, 0), -1};
    auto wit = find_elliptic_class(A.ns, v, 5);
    // c1 = 0 is not primitive, so one twist happens before the scan.
    REQUIRE(wit.chain.size() == 1);
    CHECK(std::holds_alternative<ExpTwistStep>(wit.chain[0]));
    CHECK(wit.x == basis(6, 1));
    validate_elliptic_witness(A.ns, v, 5, wit);
}

TEST_CASE("imprimitive c1 with coprime s: reflect, then twist") {
    auto A = build_abelian_ns(5, 1);
    MukaiVector v{2, basis(6, 0, 2), 3};   // content 2 shared with r
    auto wit = find_elliptic_class(A.ns, v, 5);
    REQUIRE(wit.chain.size() >= 2);
    CHECK(std::holds_alternative<SphericalReflectStep>(wit.chain[0]));
    CHECK(content(wit.v_out.c1) == 1);
    validate_elliptic_witness(A.ns, v, 5, wit);

    // The fully imprimitive version violates the precondition instead.
    CHECK_THROWS_AS(find_elliptic_class(A.ns, MukaiVector{2, basis(6, 0, 2), 4}, 5),
                    domain_error);
}

TEST_CASE("c1 = 0 with both outer slots sharing factors: shift, reflect, twist") {
    auto A = build_abelian_ns(5, 1);
    MukaiVector v{6, LatVec(6, 0), 5};
    auto wit = find_elliptic_class(A.ns, v, 5);
    // Shift, reflect, twist; the rank slot then holds -5, which the final
    // reflection moves back out of 5Z.
    REQUIRE(wit.chain.size() == 4);
    CHECK(std::holds_alternative<ExpTwistStep>(wit.chain[0]));
    CHECK(std::holds_alternative<SphericalReflectStep>(wit.chain[1]));
    CHECK(std::holds_alternative<ExpTwistStep>(wit.chain[2]));
    CHECK(std::holds_alternative<SphericalReflectStep>(wit.chain[3]));
    CHECK(content(wit.v_out.c1) == 1);
    CHECK(wit.v_out.r % 5 != 0);
    validate_elliptic_witness(A.ns, v, 5, wit);
}

TEST_CASE("p dividing both r and c1.NS is repaired by one reflection") {
    auto A = build_abelian_ns(5, 1);
    // Basis vector 4 pairs into 5Z (third row of the H block is 5-divisible).
    LatVec c1 = basis(6, 4);
    REQUIRE(divides_pairing(A.ns, c1, 5));
    MukaiVector v{5, c1, 1};
    auto wit = find_elliptic_class(A.ns, v, 5);
    REQUIRE(wit.chain.size() == 1);
    CHECK(std::holds_alternative<SphericalReflectStep>(wit.chain[0]));
    CHECK(wit.v_out == MukaiVector{-1, c1, -5});
    CHECK(wit.x == basis(6, 1));
    validate_elliptic_witness(A.ns, v, 5, wit);
}

TEST_CASE("elliptic search rejects bad input and impossible lattices") {
    auto A = build_abelian_ns(5, 1);
    CHECK_THROWS_AS(find_elliptic_class(A.ns, MukaiVector{1, LatVec(6, 0), -1}, 4),
                    domain_error);   // p not prime
    CHECK_THROWS_AS(find_elliptic_class(A.ns, MukaiVector{5, basis(6, 0, 5), 5}, 5),
                    domain_error);   // not coprime to p
    CHECK_THROWS_AS(find_elliptic_class(A.ns, MukaiVector{1, LatVec(6, 0), -1}, 5, 0),
                    domain_error);   // no height budget

    // A definite lattice has no isotropic vectors at all; the scan reports
    // exhaustion as an internal diagnostic.
    auto definite = rescale(build_hp(5), -1);
    CHECK_THROWS_AS(find_elliptic_class(definite, MukaiVector{2, basis(4, 0), 3}, 5, 2),
                    internal_error);
}

TEST_CASE("randomized elliptic searches succeed and validate on both kinds") {
    std::mt19937_64 rng(2026);
    auto K = build_k3_ns(5, 1);
    for (int trial = 0; trial < 12; ++trial) {
        auto v = sample_vector(rng, K.ns, K.p);
        auto wit = find_elliptic_class(K.ns, v, K.p);
        validate_elliptic_witness(K.ns, v, K.p, wit);
        CHECK(wit.height_used <= 2);
    }
    for (Int p : {3, 7}) {
        auto A = build_abelian_ns(p, 2);
        for (int trial = 0; trial < 12; ++trial) {
            auto v = sample_vector(rng, A.ns, p);
            auto wit = find_elliptic_class_abelian(A, v);
            validate_elliptic_witness(A.ns, v, p, wit);
            for (const auto& step : wit.chain)
                if (auto* refl = std::get_if<SphericalReflectStep>(&step))
                    CHECK(refl->e == MukaiVector{1, LatVec(6, 0), 1});
        }
    }
}

TEST_CASE("elliptic search is deterministic") {
    auto K = build_k3_ns(3, 1);
    MukaiVector v{6, LatVec(22, 0), 5};
    auto w1 = find_elliptic_class(K.ns, v, 3);
    auto w2 = find_elliptic_class(K.ns, v, 3);
    CHECK(w1.chain == w2.chain);
    CHECK(w1.v_out == w2.v_out);
    CHECK(w1.x == w2.x);
}

TEST_CASE("untwisting case I: generic L") {
    for (Int p : {3, 5, 7}) {
        auto X = build_k3_ns(p, 1);
        LatVec L = basis(22, 1);
        REQUIRE_FALSE(divides_pairing(X.ns, L, p));
        auto wit = find_untwisting_pair(X, L);
        CHECK(wit.used == UntwistCase::case_i);
        CHECK(wit.tau.r == 0);
        CHECK(wit.tau.s == BigRat(0));
        CHECK(wit.w.r == p);
        CHECK(wit.w.c1 == L);
        CHECK(wit.w.s == BigRat(norm(X.ns, L), 2 * p));
        CHECK(wit.pairing_value == BigRat(pairing(X.ns, L, wit.tau.c1)));
        validate_untwist_witness(X.ns, p, wit);

        auto again = find_untwisting_pair(X, L);
        CHECK(again.tau == wit.tau);
        CHECK(again.w == wit.w);
    }
}

TEST_CASE("untwisting case II: p-divisible L uses the hyperbolic pair") {
    for (Int p : {3, 5, 7}) {
        auto X = build_k3_ns(p, 2, K3Variant::literal);
        LatVec L = basis(22, 0, p);   // p f1 pairs into pZ with everything
        REQUIRE(divides_pairing(X.ns, L, p));
        auto wit = find_untwisting_pair(X, L);
        CHECK(wit.used == UntwistCase::case_ii);
        LatVec c1 = basis(22, 0);
        c1[1] += p;
        CHECK(wit.tau == TwistedMukaiVector{p, c1, BigRat(-1)});
        CHECK(wit.w.r == 0);
        CHECK(wit.w.c1 == basis(22, 1));
        CHECK(wit.w.s == BigRat(-1));            // f2.L = -p, divided by p
        CHECK(wit.pairing_value == BigRat(p - 1));
        validate_untwist_witness(X.ns, p, wit);
    }
}

TEST_CASE("untwisting honors forced cases and rejects unsolvable ones") {
    auto X = build_k3_ns(5, 1);
    LatVec L = basis(22, 1);
    auto forced = find_untwisting_pair(X, L, UntwistCase::case_ii);
    CHECK(forced.used == UntwistCase::case_ii);
    validate_untwist_witness(X.ns, 5, forced);

    LatVec Ldiv = basis(22, 0, 5);
    CHECK_THROWS_AS(find_untwisting_pair(X, Ldiv, UntwistCase::case_i), domain_error);

    // L = 0 is trivially p-divisible and lands in case II.
    auto zero = find_untwisting_pair(X, LatVec(22, 0));
    CHECK(zero.used == UntwistCase::case_ii);
    CHECK(zero.pairing_value == BigRat(-1));
}

TEST_CASE("untwisting rejects out-of-range inputs") {
    auto X10 = build_k3_ns(5, 10);
    CHECK_THROWS_AS(find_untwisting_pair(X10, LatVec(22, 0)), domain_error);

    SSK3Lattice fake;
    fake.ns = build_abelian_ns(2, 1).ns;
    fake.p = 2;
    fake.sigma = 1;
    CHECK_THROWS_AS(find_untwisting_pair(fake, LatVec(6, 0)), domain_error);

    // A lattice whose only hyperbolic block is scaled by p cannot serve
    // case II from its Gram basis.
    SSK3Lattice scaled;
    scaled.ns = build_abelian_ns(3, 2).ns;
    scaled.p = 3;
    scaled.sigma = 2;
    CHECK_THROWS_AS(find_untwisting_pair(scaled, LatVec(6, 0)), domain_error);

    auto X = build_k3_ns(5, 1);
    CHECK_THROWS_AS(find_untwisting_pair(X, LatVec(4, 0)), domain_error);
}

TEST_CASE("principal polarization matches the brute-force first hit") {
    for (Int p : {2, 3, 5, 7, 13})
        for (int artin : {1, 2}) {
            auto A = build_abelian_ns(p, artin);
            auto L = find_principal_polarization(A);
            CHECK(norm(A.ns, L) == 2);
            for (Int h = 1; h <= 8; ++h) {
                auto all = enumerate_with_value_serial(A.ns, 2, h);
                if (all.empty()) continue;
                CHECK(L == all.front());
                break;
            }
        }
}

TEST_CASE("principal polarization picks the expected witnesses") {
    auto A1 = build_abelian_ns(5, 1);
    CHECK(find_principal_polarization(A1) == LatVec{1, -1, 0, 0, 0, 0});
    auto A2 = build_abelian_ns(2, 1);
    CHECK(find_principal_polarization(A2) == LatVec{1, -1, 0, 0, 0, 0});
    // With U(5) and H(5) both scaled, the first square-2 vector mixes blocks.
    auto A3 = build_abelian_ns(5, 2);
    auto L = find_principal_polarization(A3);
    CHECK(norm(A3.ns, L) == 2);
    CHECK(L == LatVec{1, -1, -1, -1, -1, 1});

    SSAbelianLattice definite;
    definite.ns = rescale(d4_lattice(), -1);
    definite.branch = "test";
    CHECK_THROWS_AS(find_principal_polarization(definite), internal_error);
}

TEST_CASE("chains replay exactly") {
    auto A = build_abelian_ns(3, 1);
    TransformChain chain;
    chain.push_back(ExpTwistStep{basis(6, 2)});
    chain.push_back(SphericalReflectStep{MukaiVector{1, LatVec(6, 0), 1}});
    chain.push_back(ExpTwistStep{basis(6, 0, -2)});
    MukaiVector v{3, basis(6, 1), -2};
    auto out = apply_chain(A.ns, chain, v);
    auto manual = exp_twist(A.ns, v, basis(6, 2));
    manual = spherical_reflect(A.ns, manual, MukaiVector{1, LatVec(6, 0), 1});
    manual = exp_twist(A.ns, manual, basis(6, 0, -2));
    CHECK(out == manual);
    CHECK(mukai_norm(A.ns, out) == mukai_norm(A.ns, v));
}
