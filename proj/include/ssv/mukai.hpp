#pragma once

#include "ssv/lattice.hpp"

namespace ssv {

// (r, c1, s) in Z + NS + Z with pairing <v, w> = c1.c1' - r s' - r' s.
struct MukaiVector {
    Int r = 0;
    LatVec c1;
    Int s = 0;

    bool operator==(const MukaiVector&) const = default;
};

// Same shape but with a rational last entry, constrained so that p * s is an
// integer (the only denominators that appear are divisors of 2p, and the p
// part is what matters downstream).
struct TwistedMukaiVector {
    Int r = 0;
    LatVec c1;
    BigRat s;

    bool operator==(const TwistedMukaiVector&) const = default;
};

TwistedMukaiVector make_twisted(Int r, LatVec c1, BigRat s, Int p);

Int mukai_pairing(const IntLattice& ns, const MukaiVector& a, const MukaiVector& b);
BigRat mukai_pairing_tw(const IntLattice& ns, const TwistedMukaiVector& a,
                        const TwistedMukaiVector& b);
inline Int mukai_norm(const IntLattice& ns, const MukaiVector& v) {
    return mukai_pairing(ns, v, v);
}

// v(F) = (rk, c1, chi - rk).
MukaiVector mukai_vector_of_sheaf(Int rank, LatVec c1, Int chi);

// gcd(r, content(c1), s) = 1.
bool is_mukai_primitive(const MukaiVector& v);

// p does not divide r, or does not divide s, or does not divide c1.NS.
// No promises about v; used by callers that must diagnose raw input.
bool coprime_to_p_raw(const IntLattice& ns, const MukaiVector& v, Int p);

// Same predicate with the documented precondition that v is primitive.
bool is_coprime_to_p(const IntLattice& ns, const MukaiVector& v, Int p);

// gcd(r, c1.H, s) = 1.
bool is_general_numeric(const IntLattice& ns, const MukaiVector& v, const LatVec& H);

// exp(L): (r, c1 + rL, s + r L^2/2 + c1.L).  Needs r L^2 even (any even
// ambient lattice qualifies).
MukaiVector exp_twist(const IntLattice& ns, const MukaiVector& v, const LatVec& L);

// Reflection in a (-2)-vector e: x + <x,e> e.
MukaiVector spherical_reflect(const IntLattice& ns, const MukaiVector& v, const MukaiVector& e);

// An L such that exp_twist(v, L) is general w.r.t. H.  Searches per-prime
// candidates among 0 and small basis combinations, then combines them with a
// Bezout partition of unity.  Throws domain_error if v is not primitive and
// coprime to p, internal_error if the candidate search fails.
LatVec find_generality_twist(const IntLattice& ns, const MukaiVector& v, const LatVec& H, Int p);

enum class ModuliKind { k3, abelian_kummer };

// <v,v> + 2 for K3 kind (needs <v,v> >= 0, r > 0);
// <v,v> - 2 for the Kummer kind (needs <v,v> >= 2, r > 0).
Int moduli_dimension(const IntLattice& ns, const MukaiVector& v, ModuliKind kind);

struct ModuliReport {
    Int dim = 0;
    int vperp_rank = 0;      // rank of v-perp inside Z + NS + Z
    int b2_target = 0;       // 23 for K3 moduli, 7 for Kummer type
    bool shioda_certified = false;
};

// Requires dim >= 4.
ModuliReport shioda_report(const IntLattice& ns, const MukaiVector& v, ModuliKind kind);

}  // namespace ssv
