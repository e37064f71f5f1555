#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ssv/lattice.hpp"

namespace ssv {

// Slope data of an isocrystal: (slope, multiplicity) pairs with slopes
// nonnegative, distinct, ascending and multiplicities positive.  This is the
// full isogeny invariant, so no Frobenius matrices are stored anywhere in the
// module.  Build through make_slopes, which normalizes and validates.
struct SlopeMultiset {
    std::vector<std::pair<BigRat, Int>> entries;

    Int total_rank() const;
    bool operator==(const SlopeMultiset&) const = default;
};

// Sorts, merges equal slopes, validates.  Entries with multiplicity 0 are
// dropped; negative slopes or multiplicities are rejected.
SlopeMultiset make_slopes(std::vector<std::pair<BigRat, Int>> raw);

// Lower convex hull presentation of the same data: vertices from (0,0) with
// strictly increasing x and strictly increasing segment slopes.
struct NewtonPolygon {
    std::vector<std::pair<Int, BigRat>> vertices;

    Int rank() const;   // x-coordinate of the last vertex
    bool operator==(const NewtonPolygon&) const = default;
};

// Throws domain_error unless the vertex list starts at (0,0), x strictly
// increases, and consecutive segment slopes strictly increase.  Used on any
// polygon that was not produced by this module (JSON input, hand-built tests).
void validate_polygon(const NewtonPolygon& np);

// Hodge-theoretic side: (level, multiplicity) pairs, levels distinct and
// ascending, multiplicities positive.  Levels may be any integers; the
// comparison predicates only ever see their polygon.
struct HodgeNumbers {
    std::vector<std::pair<Int, Int>> levels;

    Int total_rank() const;
    bool operator==(const HodgeNumbers&) const = default;
};

HodgeNumbers make_hodge(std::vector<std::pair<Int, Int>> raw);

// Newton polygon from the p-adic valuations of a characteristic polynomial,
// reversed-monic convention: vals[i] is the valuation of the coefficient of
// T^(rank-i), so vals[0] belongs to the leading coefficient and must be 0.
// std::nullopt marks a zero coefficient (valuation infinity); those points are
// skipped by the hull.
NewtonPolygon newton_from_valuations(const std::vector<std::optional<BigRat>>& vals);

// Mutually inverse presentations.  slopes_of validates its input polygon.
SlopeMultiset slopes_of(const NewtonPolygon& np);
NewtonPolygon polygon_of(const SlopeMultiset& s);

// Straight-line test in cohomological degree i: exactly one slope, equal to
// i/2.
bool is_supersingular(const SlopeMultiset& s, Int degree);

// Newton polygon equals the Hodge polygon.  Ranks must agree.
bool is_ordinary(const NewtonPolygon& np, const HodgeNumbers& h);

// Slopes of the k-th exterior power: sums over k-element sub-multisets, with
// binomial multiplicity counting per slope group (knapsack convolution, never
// an enumeration of the C(rank, k) subsets).  Requires 0 <= k <= rank.
SlopeMultiset wedge_slopes(const SlopeMultiset& s, Int k);

// Slopes of the tensor product: all pairwise sums, multiplicities multiply.
SlopeMultiset tensor_slopes(const SlopeMultiset& a, const SlopeMultiset& b);

// Twist by -n: shifts every slope up by n.  A negative resulting slope leaves
// the crystal-level model and is rejected.
SlopeMultiset tate_twist(const SlopeMultiset& s, Int n);

// Degree-2 slope multiset of the dimension >= 4 moduli constructions built on
// a surface: the surface H^2 slopes (rank 6 or 22) plus one extra slope-1
// class.  Preserves and reflects the straight-line property.
SlopeMultiset hilb_or_kummer_h2(const SlopeMultiset& s);

}  // namespace ssv
