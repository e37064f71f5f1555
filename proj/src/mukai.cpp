#include "ssv/mukai.hpp"

#include <algorithm>

namespace ssv {

namespace {

void check_len(const IntLattice& ns, const LatVec& c1, const char* what) {
    if ((int)c1.size() != ns.rank)
        throw domain_error(std::string(what) + ": c1 length does not match lattice rank");
}

Int gcd3(Int a, Int b, Int c) { return gcd_int(gcd_int(a, b), c); }

std::vector<Int> prime_factors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x, y with a x + b y = gcd(a, b).
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

TwistedMukaiVector make_twisted(Int r, LatVec c1, BigRat s, Int p) {
    BigRat ps = s * p;
    if (boost::multiprecision::denominator(ps) != 1)
        throw domain_error("twisted vector: p * s must be an integer");
    return {r, std::move(c1), std::move(s)};
}

Int mukai_pairing(const IntLattice& ns, const MukaiVector& a, const MukaiVector& b) {
    check_len(ns, a.c1, "mukai_pairing");
    check_len(ns, b.c1, "mukai_pairing");
    return pairing(ns, a.c1, b.c1) - a.r * b.s - b.r * a.s;
}

BigRat mukai_pairing_tw(const IntLattice& ns, const TwistedMukaiVector& a,
                        const TwistedMukaiVector& b) {
    check_len(ns, a.c1, "mukai_pairing");
    check_len(ns, b.c1, "mukai_pairing");
    return BigRat(pairing(ns, a.c1, b.c1)) - BigRat(a.r) * b.s - BigRat(b.r) * a.s;
}

MukaiVector mukai_vector_of_sheaf(Int rank, LatVec c1, Int chi) {
    return {rank, std::move(c1), chi - rank};
}

bool is_mukai_primitive(const MukaiVector& v) {
    return gcd3(v.r, content(v.c1), v.s) == 1;
}

bool coprime_to_p_raw(const IntLattice& ns, const MukaiVector& v, Int p) {
    check_len(ns, v.c1, "coprime_to_p");
    if (p < 2) throw domain_error("coprime_to_p needs p >= 2");
    if (v.r % p != 0) return true;
    if (v.s % p != 0) return true;
    return !divides_pairing(ns, v.c1, p);
}

bool is_coprime_to_p(const IntLattice& ns, const MukaiVector& v, Int p) {
    if (!is_mukai_primitive(v))
        throw domain_error("coprime_to_p is defined for primitive Mukai vectors");
    return coprime_to_p_raw(ns, v, p);
}

bool is_general_numeric(const IntLattice& ns, const MukaiVector& v, const LatVec& H) {
    check_len(ns, v.c1, "is_general_numeric");
    return gcd3(v.r, pairing(ns, v.c1, H), v.s) == 1;
}

MukaiVector exp_twist(const IntLattice& ns, const MukaiVector& v, const LatVec& L) {
    check_len(ns, v.c1, "exp_twist");
    check_len(ns, L, "exp_twist");
    Int L2 = norm(ns, L);
    if ((v.r * L2) % 2 != 0)
        throw domain_error("exp_twist: r L^2 is odd (ambient form not even at L)");
    MukaiVector out;
    out.r = v.r;
    out.c1.resize(ns.rank);
    for (int i = 0; i < ns.rank; ++i) out.c1[i] = v.c1[i] + v.r * L[i];
    out.s = v.s + v.r * L2 / 2 + pairing(ns, v.c1, L);
    return out;
}

MukaiVector spherical_reflect(const IntLattice& ns, const MukaiVector& v, const MukaiVector& e) {
    if (mukai_norm(ns, e) != -2)
        throw domain_error("spherical_reflect: e must have square -2");
    Int c = mukai_pairing(ns, v, e);
    MukaiVector out;
    out.r = v.r + c * e.r;
    out.c1.resize(ns.rank);
    for (int i = 0; i < ns.rank; ++i) out.c1[i] = v.c1[i] + c * e.c1[i];
    out.s = v.s + c * e.s;
    return out;
}

LatVec find_generality_twist(const IntLattice& ns, const MukaiVector& v, const LatVec& H, Int p) {
    check_len(ns, v.c1, "find_generality_twist");
    check_len(ns, H, "find_generality_twist");
    if (!is_mukai_primitive(v))
        throw domain_error("find_generality_twist needs a primitive Mukai vector");
    if (!coprime_to_p_raw(ns, v, p))
        throw domain_error("find_generality_twist needs v coprime to p");

    LatVec zero(ns.rank, 0);
    if (is_general_numeric(ns, v, H)) return zero;

    // Only primes dividing both r and c1.H can spoil generality after a twist:
    // (c1 + rL).H = c1.H (mod r) and s changes by a multiple of each such prime
    // plus c1.L.  For each of them pick L_q with q not dividing s + c1.L_q.
    Int g0 = gcd_int(v.r, pairing(ns, v.c1, H));
    if (g0 == 0)
        throw domain_error("find_generality_twist: r = 0 and c1.H = 0 cannot be repaired");
    auto primes = prime_factors(g0);

    std::vector<LatVec> picked;
    for (Int q : primes) {
        bool found = false;
        auto try_cand = [&](const LatVec& L) {
            if (found) return;
            Int snew = v.s + pairing(ns, v.c1, L);
            if (snew % q != 0) {
                picked.push_back(L);
                found = true;
            }
        };
        try_cand(zero);
        for (Int mult = 1; mult <= 3 && !found; ++mult)
            for (int i = 0; i < ns.rank && !found; ++i) {
                LatVec L(ns.rank, 0);
                L[i] = mult;
                try_cand(L);
            }
        for (int i = 0; i < ns.rank && !found; ++i)
            for (int j = i + 1; j < ns.rank && !found; ++j)
                for (Int sj : {1LL, -1LL}) {
                    LatVec L(ns.rank, 0);
                    L[i] = 1;
                    L[j] = sj;
                    try_cand(L);
                }
        if (!found)
            throw internal_error("no single-prime twist candidate for q = " + std::to_string(q));
    }

    // Bezout partition of unity over the moduli G/q_i, so L = sum a_i (G/q_i) L_i
    // reduces to L_i modulo each q_i.
    Int G = 1;
    for (Int q : primes) G *= q;
    std::vector<Int> coeff(primes.size(), 1);
    Int acc = G / primes[0];   // gcd of the moduli combined so far
    for (size_t i = 1; i < primes.size(); ++i) {
        Int x, y;
        Int g = ext_gcd(acc, G / primes[i], x, y);
        for (size_t j = 0; j < i; ++j) coeff[j] *= x;
        coeff[i] = y;
        acc = g;
    }
    if (acc != 1 && acc != -1)
        throw internal_error("bezout combination failed on coprime moduli");
    if (acc == -1)
        for (auto& c : coeff) c = -c;
    LatVec L(ns.rank, 0);
    for (size_t i = 0; i < primes.size(); ++i)
        for (int k = 0; k < ns.rank; ++k) L[k] += coeff[i] * (G / primes[i]) * picked[i][k];

    if (!is_general_numeric(ns, exp_twist(ns, v, L), H))
        throw internal_error("generality twist recheck failed");
    return L;
}

Int moduli_dimension(const IntLattice& ns, const MukaiVector& v, ModuliKind kind) {
    Int vv = mukai_norm(ns, v);
    if (v.r <= 0)
        throw domain_error("moduli_dimension: positive rank r required");
    if (kind == ModuliKind::k3) {
        if (vv < 0) throw domain_error("moduli_dimension: <v,v> >= 0 required for K3 moduli");
        return vv + 2;
    }
    if (vv < 2) throw domain_error("moduli_dimension: <v,v> >= 2 required for Kummer moduli");
    return vv - 2;
}

ModuliReport shioda_report(const IntLattice& ns, const MukaiVector& v, ModuliKind kind) {
    ModuliReport rep;
    rep.dim = moduli_dimension(ns, v, kind);
    if (rep.dim < 4)
        throw domain_error("shioda_report applies to moduli of dimension >= 4");
    rep.vperp_rank = ns.rank + 1;
    rep.b2_target = kind == ModuliKind::k3 ? 23 : 7;
    rep.shioda_certified = (rep.vperp_rank == rep.b2_target);
    return rep;
}

}  // namespace ssv
