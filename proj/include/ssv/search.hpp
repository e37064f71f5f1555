#pragma once

#include <variant>

#include "ssv/catalog.hpp"
#include "ssv/mukai.hpp"

namespace ssv {

// Recorded isometries of Z + NS + Z, replayable so witnesses can be audited.
struct ExpTwistStep {
    LatVec L;

    bool operator==(const ExpTwistStep&) const = default;
};
struct SphericalReflectStep {
    MukaiVector e;

    bool operator==(const SphericalReflectStep&) const = default;
};
using TransformStep = std::variant<ExpTwistStep, SphericalReflectStep>;
using TransformChain = std::vector<TransformStep>;

MukaiVector apply_chain(const IntLattice& ns, const TransformChain& chain, MukaiVector v);

// Output of the elliptic-class search: after the chain, v_out = (r', c1', s')
// admits a primitive isotropic x with gcd(r', c1'.x) = 1.
struct EllipticWitness {
    TransformChain chain;
    MukaiVector v_out;
    LatVec x;
    Int height_used = 0;   // max-norm shell where x was found
};

// Recomputes every claim of the witness from scratch; throws internal_error
// on the first violation.
void validate_elliptic_witness(const IntLattice& ns, const MukaiVector& v_in, Int p,
                               const EllipticWitness& wit);

// Normalizes v by line-bundle twists and the reflection in (1, 0, 1) until c1
// is primitive (and r' avoids p when c1'.NS cannot), then scans isotropic
// shells for x with gcd(r', c1'.x) = 1.  v must be primitive and coprime
// to p; cap exhaustion is an internal diagnostic, not an expected outcome.
EllipticWitness find_elliptic_class(const IntLattice& ns, const MukaiVector& v, Int p,
                                    Int height_cap = 16);

// Same search on a rank-6 abelian-surface lattice; the chain only ever uses
// twists and the (1, 0, 1) reflection, which is all that is available there.
EllipticWitness find_elliptic_class_abelian(const SSAbelianLattice& A, const MukaiVector& v,
                                            Int height_cap = 16);

enum class UntwistCase { automatic, case_i, case_ii };

// tau isotropic in the Mukai lattice, w with denominator dividing 2p, and
// <tau, w> an integer prime to p.
struct UntwistWitness {
    UntwistCase used = UntwistCase::automatic;
    TwistedMukaiVector tau;
    TwistedMukaiVector w;
    BigRat pairing_value;   // <tau, w>, recomputed by the validator
};

void validate_untwist_witness(const IntLattice& ns, Int p, const UntwistWitness& wit);

// Case I (p does not divide L.NS): tau = (0, E, 0) for an isotropic E with
// p not dividing L.E, w = (p, L, L^2/2p).  Case II (p divides L.NS): tau =
// (p, f + p g, f.g) built from a hyperbolic pair in the Gram basis, w =
// (0, g, (g.L)/p).  `automatic` picks by the divisibility test; a forced
// case that is unsolvable for this L is rejected up front.
UntwistWitness find_untwisting_pair(const SSK3Lattice& X, const LatVec& L,
                                    UntwistCase which = UntwistCase::automatic,
                                    Int height_cap = 8);

// First vector of square 2 in canonical order.  Every catalog lattice
// contains one, so cap exhaustion is an internal diagnostic.
LatVec find_principal_polarization(const SSAbelianLattice& A, Int height_cap = 8);

}  // namespace ssv
