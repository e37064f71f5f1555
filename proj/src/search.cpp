#include "ssv/search.hpp"

#include <string>

#include "ssv/enumerate.hpp"

namespace ssv {

namespace {

LatVec basis_vector(int rank, int i, Int a = 1) {
    LatVec v(rank, 0);
    v[i] = a;
    return v;
}

std::string render(const MukaiVector& v) {
    std::string out = "(" + std::to_string(v.r) + ", [";
    for (size_t i = 0; i < v.c1.size(); ++i)
        out += (i ? "," : "") + std::to_string(v.c1[i]);
    return out + "], " + std::to_string(v.s) + ")";
}

// Smallest twist a e_i making c1 + r a e_i primitive.  Solvable whenever
// gcd(r, content(c1)) = 1: a prime dividing every coordinate of the result
// would have to divide both r and content(c1).
LatVec primitivizing_twist(const IntLattice& ns, const MukaiVector& v) {
    for (Int a = 1; a <= 256; ++a)
        for (int i = 0; i < ns.rank; ++i) {
            LatVec c1 = v.c1;
            c1[i] += v.r * a;
            if (content(c1) == 1) return basis_vector(ns.rank, i, a);
        }
    throw internal_error("primitivizing twist not found below coefficient 256 for v = " +
                         render(v));
}

// Twist a e_i keeping c1 primitive while moving s off pZ.  Used when p
// divides both r and s: coprimality to p then puts some basis pairing
// c1.e_i outside pZ, and s shifts by a multiple of that plus elements of pZ.
LatVec p_clearing_twist(const IntLattice& ns, const MukaiVector& v, Int p) {
    for (Int a = 1; a <= 256; ++a)
        for (int i = 0; i < ns.rank; ++i) {
            LatVec L = basis_vector(ns.rank, i, a);
            auto t = exp_twist(ns, v, L);
            if (content(t.c1) == 1 && t.s % p != 0) return L;
        }
    throw internal_error("no twist below coefficient 256 moves s off p for v = " + render(v));
}

EllipticWitness elliptic_core(const IntLattice& ns, const MukaiVector& v, Int p, Int cap) {
    if (!is_prime(p)) throw domain_error("elliptic search needs a prime p");
    if (cap < 1) throw domain_error("elliptic search needs a positive height cap");
    if (!is_mukai_primitive(v))
        throw domain_error("elliptic search needs a primitive Mukai vector");
    if (!coprime_to_p_raw(ns, v, p))
        throw domain_error("elliptic search needs v coprime to p");

    EllipticWitness wit;
    MukaiVector w = v;
    auto push_twist = [&](const LatVec& L) {
        wit.chain.push_back(ExpTwistStep{L});
        w = exp_twist(ns, w, L);
    };
    auto push_reflect = [&] {
        MukaiVector e{1, LatVec(ns.rank, 0), 1};
        wit.chain.push_back(SphericalReflectStep{e});
        w = spherical_reflect(ns, w, e);
    };

    for (int iter = 0;; ++iter) {
        if (iter > 8)
            throw internal_error("c1 primitivization did not settle in 8 steps for v = " +
                                 render(v));
        Int d = content(w.c1);
        if (d == 1) break;
        if (gcd_int(w.r, d) == 1) {
            push_twist(primitivizing_twist(ns, w));
        } else if (gcd_int(d, w.s) == 1) {
            push_reflect();   // swap r and s so the twist above applies
        } else {
            // Both r and s share a factor with content(c1) (so r, s != 0 by
            // primitivity of v).  An isotropic shift moves only s; pick one
            // that frees the (c1, s) side, then the reflection case runs.
            auto shift = find_first_with_value(ns, 0, 4, [&](const LatVec& L) {
                auto t = exp_twist(ns, w, L);
                return gcd_int(content(t.c1), t.s) == 1;
            });
            if (!shift)
                throw internal_error("no isotropic shift below height 4 rebalances " +
                                     render(w));
            push_twist(*shift);
        }
    }
    // det NS is a power of p, so the quadric mod p is degenerate: with p | r'
    // every isotropic class can pair into pZ with c1' even though c1'.NS does
    // not.  Move the rank slot off p entirely: make s' a unit mod p first if
    // it is not one, then swap the outer slots.  This also settles r' = 0.
    if (w.r % p == 0) {
        if (w.s % p == 0) push_twist(p_clearing_twist(ns, w, p));
        push_reflect();
    }

    auto x = find_first_with_value(ns, 0, cap, [&](const LatVec& cand) {
        return gcd_int(w.r, pairing(ns, w.c1, cand)) == 1;
    });
    if (!x)
        throw internal_error("isotropic scan exhausted height " + std::to_string(cap) +
                             " without gcd(r', c1'.x) = 1; v' = " + render(w) +
                             " after " + std::to_string(wit.chain.size()) + " steps");
    wit.v_out = w;
    wit.x = *x;
    for (Int c : wit.x) wit.height_used = std::max(wit.height_used, c < 0 ? -c : c);
    validate_elliptic_witness(ns, v, p, wit);
    return wit;
}

}  // namespace

MukaiVector apply_chain(const IntLattice& ns, const TransformChain& chain, MukaiVector v) {
    for (const auto& step : chain)
        v = std::visit(
            [&](const auto& s) -> MukaiVector {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ExpTwistStep>)
                    return exp_twist(ns, v, s.L);
                else
                    return spherical_reflect(ns, v, s.e);
            },
            step);
    return v;
}

void validate_elliptic_witness(const IntLattice& ns, const MukaiVector& v_in, Int p,
                               const EllipticWitness& wit) {
    if (!(apply_chain(ns, wit.chain, v_in) == wit.v_out))
        throw internal_error("witness chain does not replay to the recorded vector");
    if (!is_mukai_primitive(wit.v_out))
        throw internal_error("witness chain lost primitivity");
    if (!coprime_to_p_raw(ns, wit.v_out, p))
        throw internal_error("witness chain lost coprimality to p");
    if (!is_primitive(wit.x))
        throw internal_error("witness class x is not primitive");
    if (norm(ns, wit.x) != 0)
        throw internal_error("witness class x is not isotropic");
    if (gcd_int(wit.v_out.r, pairing(ns, wit.v_out.c1, wit.x)) != 1)
        throw internal_error("witness fails gcd(r', c1'.x) = 1");
}

EllipticWitness find_elliptic_class(const IntLattice& ns, const MukaiVector& v, Int p,
                                    Int height_cap) {
    return elliptic_core(ns, v, p, height_cap);
}

EllipticWitness find_elliptic_class_abelian(const SSAbelianLattice& A, const MukaiVector& v,
                                            Int height_cap) {
    return elliptic_core(A.ns, v, A.p, height_cap);
}

void validate_untwist_witness(const IntLattice& ns, Int p, const UntwistWitness& wit) {
    if (mukai_pairing_tw(ns, wit.tau, wit.tau) != 0)
        throw internal_error("tau is not isotropic in the Mukai pairing");
    BigRat tw = mukai_pairing_tw(ns, wit.tau, wit.w);
    if (boost::multiprecision::denominator(tw) != 1)
        throw internal_error("<tau, w> is not an integer");
    if (boost::multiprecision::numerator(tw) % p == 0)
        throw internal_error("p divides <tau, w>");
    if (tw != wit.pairing_value)
        throw internal_error("recorded pairing value does not match <tau, w>");
}

UntwistWitness find_untwisting_pair(const SSK3Lattice& X, const LatVec& L, UntwistCase which,
                                    Int height_cap) {
    const IntLattice& ns = X.ns;
    if ((int)L.size() != ns.rank)
        throw domain_error("untwisting: L length does not match the lattice rank");
    if (X.p == 2)
        throw domain_error("untwisting needs odd p; the p = 2 lattices are not cataloged");
    if (X.sigma >= 10)
        throw domain_error("untwisting requires sigma < 10");
    Int p = X.p;

    bool divisible = divides_pairing(ns, L, p);
    UntwistCase used = which;
    if (which == UntwistCase::automatic)
        used = divisible ? UntwistCase::case_ii : UntwistCase::case_i;

    UntwistWitness wit;
    wit.used = used;
    if (used == UntwistCase::case_i) {
        if (divisible)
            throw domain_error("case I is unsolvable: p divides L.x for every x; use case II");
        auto E = find_first_with_value(ns, 0, height_cap, [&](const LatVec& cand) {
            return pairing(ns, L, cand) % p != 0;
        });
        if (!E)
            throw internal_error("no isotropic E with p not dividing L.E below height " +
                                 std::to_string(height_cap));
        wit.tau = TwistedMukaiVector{0, *E, BigRat(0)};
        wit.w = make_twisted(p, L, BigRat(norm(ns, L), 2 * p), p);
        wit.pairing_value = BigRat(pairing(ns, L, *E));
    } else {
        // A hyperbolic pair that is orthogonal to the rest of the basis.
        int fi = -1, fj = -1;
        for (int a = 0; a < ns.rank && fi < 0; ++a)
            for (int b = 0; b < ns.rank && fi < 0; ++b) {
                if (a == b || ns.gram[a][a] != 0 || ns.gram[b][b] != 0) continue;
                if (ns.gram[a][b] != 1 && ns.gram[a][b] != -1) continue;
                bool clean = true;
                for (int k = 0; k < ns.rank && clean; ++k)
                    if (k != a && k != b)
                        clean = ns.gram[a][k] == 0 && ns.gram[b][k] == 0;
                if (clean) {
                    fi = a;
                    fj = b;
                }
            }
        if (fi < 0)
            throw domain_error("case II needs a hyperbolic summand visible in the Gram basis");
        Int u = ns.gram[fi][fj];
        // tau = (p, f + p g, u) squares to 2pu - 2pu = 0; w = (0, g, (g.L)/p)
        // pairs with tau to u - g.L, which avoids p whenever g.L does not
        // defeat it (guaranteed when p divides L.NS, the case II trigger).
        for (auto [a, b] : {std::pair{fi, fj}, std::pair{fj, fi}}) {
            LatVec c1 = basis_vector(ns.rank, a);
            c1[b] += p;
            LatVec D = basis_vector(ns.rank, b);
            Int value = u - pairing(ns, D, L);
            if (value % p == 0) continue;
            wit.tau = TwistedMukaiVector{p, c1, BigRat(u)};
            wit.w = make_twisted(0, D, BigRat(pairing(ns, D, L), p), p);
            wit.pairing_value = BigRat(value);
            validate_untwist_witness(ns, p, wit);
            return wit;
        }
        throw domain_error("case II is unsolvable: both hyperbolic generators pair with L "
                           "divisibly by p; use case I");
    }
    validate_untwist_witness(ns, p, wit);
    return wit;
}

LatVec find_principal_polarization(const SSAbelianLattice& A, Int height_cap) {
    auto x = find_first_with_value(A.ns, 2, height_cap);
    if (!x)
        throw internal_error("no vector of square 2 below height " + std::to_string(height_cap) +
                             " on the " + A.branch + " lattice");
    return *x;
}

}  // namespace ssv
