#pragma once

#include <map>
#include <vector>

#include "ssv/lattice.hpp"

namespace ssv {

// Integer partition with weakly decreasing positive parts.  Build through
// make_partition, which sorts and validates.
struct Partition {
    std::vector<Int> parts;

    Int sum() const;
    Int length() const { return (Int)parts.size(); }
    Int gcd() const;                         // 0 for the empty partition
    Partition transpose() const;
    std::map<Int, Int> multiplicities() const;   // part size -> count

    bool operator==(const Partition&) const = default;
};

Partition make_partition(std::vector<Int> parts);

// All partitions of n, ordered descending-lexicographically: (n) first,
// (1,...,1) last.  n = 0 gives the single empty partition.
std::vector<Partition> all_partitions(Int n);

// Object of the semisimple category generated by the unit motive and the
// rank-2 weight-1 motive of a supersingular elliptic curve:
//     sum over i of  unit(-i)^tate[i]  +  h1(-i)^h1e[i].
// Both maps are finitely supported with positive values and nonnegative
// twists; the zero motive is the pair of empty maps.  This multiplicity data
// is a complete isomorphism invariant, which is what makes two independently
// computed decompositions comparable by operator==.
struct SSMotive {
    std::map<Int, BigInt> tate;
    std::map<Int, BigInt> h1e;

    bool operator==(const SSMotive&) const = default;
};

// mult copies of unit(-twist) resp. h1(-twist); mult 0 gives the zero motive.
SSMotive tate_motive(Int twist, BigInt mult = 1);
SSMotive h1e_motive(Int twist, BigInt mult = 1);

SSMotive motive_add(const SSMotive& a, const SSMotive& b);

// Bilinear over direct sums, with unit(-a) x unit(-b) = unit(-a-b),
// unit(-a) x h1(-b) = h1(-a-b) and h1(-a) x h1(-b) = unit(-a-b-1)^4.
SSMotive motive_tensor(const SSMotive& a, const SSMotive& b);

SSMotive motive_scale(const SSMotive& m, const BigInt& c);
SSMotive motive_twist(const SSMotive& m, Int k);   // adds k to every twist

// Total rank of the underlying realization: tate counts 1, h1e counts 2.
BigInt realization_rank(const SSMotive& m);

// Symmetric and exterior powers of the rank-2 odd generator.  Closed forms,
// rank-checked against the realization: Sym^2j = unit(-j)^(2j+1),
// Sym^(2j+1) = h1(-j)^(j+1); wedge is unit, h1, unit(-1), then zero.
SSMotive sym_h1e(Int k);
SSMotive wedge_h1e(Int k);

// Schur functor of the rank-2 odd generator: zero for length >= 3, otherwise
// lambda = (a+b, a) gives unit(-a) x Sym^b.
SSMotive schur_h1e(const Partition& lambda);

// Dimension of the Schur functor of shape lambda applied to a g-dimensional
// space, by the hook content formula.  Zero when lambda has more than g rows.
BigInt schur_dim(const Partition& lambda, Int g);

// Motive of a g-dimensional supersingular abelian variety by two independent
// routes: from the binomial Betti numbers C(2g, i) directly, and as the sum
// over partitions lambda of i of S_lambda(h1) ^ dim S_lambda'(g).  The two
// must agree; tests and the acceptance suite compare them exactly.
SSMotive abelian_motive_direct(Int g);
SSMotive abelian_motive_schur(Int g);

// Betti numbers b_0..b_max as exact integers.
using BettiVector = std::vector<BigInt>;

// b_2i = tate[i], b_2i+1 = 2 h1e[i], and the inverse.  Odd input entries
// must be even.
SSMotive canonical_from_betti(const BettiVector& b);
BettiVector betti_of(const SSMotive& m);

// Motive of the n-th punctual Hilbert scheme of a surface whose motive is of
// Tate type (h1e empty; anything else is rejected): sum over partitions of n
// with multiplicities a_m of the product over m of Sym^(a_m)(surface)
// twisted by (m-1) a_m.  Sym of a Tate motive counts multisets of slots by
// generating-polynomial convolution, never by enumeration.
SSMotive hilb_motive(const SSMotive& surface, Int n);

// Independent oracle for hilb_motive: Betti numbers of the n-th punctual
// Hilbert scheme from the Goettsche product formula
//     prod_m (1 - t^(2m-2) q^m)^-b0 (1 - t^(2m) q^m)^-b2 (1 - t^(2m+2) q^m)^-b4
// expanded with exact integer arithmetic.  Input must be a length-5 Betti
// vector with b1 = b3 = 0.
BettiVector gottsche_poincare(const BettiVector& b_surface, Int n);

// One direct summand of the generalized-Kummer decomposition
//     h(K_n)(n) = sum over partitions lambda of n+1 of h(A_0^lambda)(length):
// the torsion kernel A_0^lambda is gcd(lambda)^4 disjoint copies of the
// (length-1)-st power of the abelian surface, carried here with its net
// twist length - n.  No symmetric-group invariants are taken, so summing
// realization ranks deliberately overcounts; kummer_audit documents that.
struct KummerSummand {
    Partition lambda;
    BigInt copies;   // gcd(lambda)^4
    Int power;       // exponent of the abelian surface per copy
    Int twist;       // length(lambda) - n
};

std::vector<KummerSummand> kummer_inventory(Int n);

// Exact Betti numbers of the 2n-dimensional generalized Kummer variety, by
// the cycle-type average: each summand above contributes
//     gcd^4 z^(2(n+1-l)) / |S_lambda| * sum over w in S_lambda of
//         prod over cycle lengths d of (1 - (-z)^d)^4, all over (1+z)^4,
// the trace of the permutation action on the cohomology of the sum-zero
// subtorus.  Every division is checked exact.
BettiVector kummer_betti(Int n);

// The inventory's naive rank total next to the Betti rank total; consistent
// is false whenever invariants matter (already at n = 1: 32 vs 24).
struct KummerAudit {
    std::vector<KummerSummand> summands;
    BigInt inventory_rank;
    BigInt betti_rank;
    bool consistent;
};

KummerAudit kummer_audit(Int n);

// Per-codimension Chow bookkeeping readable off the canonical form: the free
// part has rank b_2i and the odd part contributes an abelian variety of
// dimension b_(2i-1)/2.  tate_type flags vanishing odd cohomology, in which
// case rational and numerical equivalence agree degreewise.
struct ChowRow {
    Int codim;
    BigInt ch_rank;
    BigInt ab_dim;
};

struct ChowReport {
    std::vector<ChowRow> rows;
    bool tate_type;
};

ChowReport chow_rank_report(const BettiVector& b);

}  // namespace ssv
