#include "ssv/catalog.hpp"

#include "ssv/overlattice.hpp"

namespace ssv {

namespace {

constexpr Int kParamSearchCap = 1000000;

Int modpow(Int base, Int exp, Int mod) {
    unsigned __int128 acc = 1, b = (unsigned __int128)(((base % mod) + mod) % mod);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % (unsigned __int128)mod;
        b = b * b % (unsigned __int128)mod;
        exp >>= 1;
    }
    return (Int)acc;
}

}  // namespace

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return n == d;
    return true;
}

Int legendre_symbol(Int a, Int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    Int v = modpow(a, (p - 1) / 2, p);
    return v == 1 ? 1 : -1;
}

HpParams find_hp_params(Int p) {
    if (p < 3 || !is_prime(p)) throw domain_error("H(p) parameters need an odd prime p");
    for (Int q = 3; q <= kParamSearchCap; q += 8) {
        if (!is_prime(q)) continue;
        if (legendre_symbol(-q, p) != -1) continue;
        for (Int g = 0; g < q; ++g)
            if ((g * g + p) % q == 0) return {p, q, g};
        // Reciprocity makes -p a square mod such q; reaching here means the
        // two preceding checks are broken, not that q was unlucky.
        throw internal_error("no gamma below q despite -q being a non-residue mod p");
    }
    throw internal_error("H(p) parameter search exhausted the 10^6 cap for p = " +
                         std::to_string(p));
}

IntLattice build_hp(Int p) {
    auto [pp, q, g] = find_hp_params(p);
    (void)pp;
    IntLattice H(4, {{2, 1, 0, 0},
                     {1, (q + 1) / 2, 0, g},
                     {0, 0, p * (q + 1) / 2, p},
                     {0, g, p, 2 * (p + g * g) / q}});
    if (determinant(H) != BigInt(p) * p)
        throw internal_error("H(p) determinant is not p^2 for p = " + std::to_string(p));
    if (!is_even(H)) throw internal_error("H(p) came out odd for p = " + std::to_string(p));
    return H;
}

IntLattice build_vmn(Int p, int m, int n) {
    if (p < 3 || p % 2 == 0) throw domain_error("V(p; m, n) needs odd p");
    if (m < 2 || n < 0 || n > m) throw domain_error("V(p; m, n) needs 2 <= m and 0 <= n <= m");

    RationalGeneratorSet gs;
    gs.ambient_diag.assign(m, 1);
    for (int i = 0; i < n; ++i) gs.ambient_diag[i] = p;
    // Even-coordinate-sum sublattice: consecutive differences plus one sum.
    for (int i = 0; i + 1 < m; ++i) {
        std::vector<BigRat> row(m, BigRat(0));
        row[i] = 1;
        row[i + 1] = -1;
        gs.generators.push_back(std::move(row));
    }
    {
        std::vector<BigRat> row(m, BigRat(0));
        row[m - 2] = 1;
        row[m - 1] = 1;
        gs.generators.push_back(std::move(row));
    }
    // Glue vector: half the all-ones vector, square (n p + m - n) / 4.
    gs.generators.push_back(std::vector<BigRat>(m, BigRat(1, 2)));

    auto built = overlattice_from_generators(gs).lattice;   // throws if glue is non-integral
    if (built.rank != m)
        throw internal_error("V(p; m, n) generators span the wrong rank");
    if (!is_even(built))
        throw domain_error("V(p; m, n) is not even for p = " + std::to_string(p) +
                           ", m = " + std::to_string(m) + ", n = " + std::to_string(n) +
                           " (glue square " + std::to_string(n * (int)p + m - n) + "/4)");
    return built;
}

LatticeValidation validate_ns(const IntLattice& ns, Int p, int requested_sigma) {
    LatticeValidation v;
    v.even = is_even(ns);
    v.rank = ns.rank;
    v.sig = signature(ns);
    BigInt det = determinant(ns);
    v.abs_det = det < 0 ? -det : det;
    BigInt rest = v.abs_det;
    int e = 0;
    while (rest > 1 && rest % p == 0) { rest /= p; ++e; }
    v.det_p_exponent = (rest == 1) ? e : -1;
    v.sigma_computed = (rest == 1 && e % 2 == 0) ? e / 2 : -1;
    v.matches_requested = (v.sigma_computed == requested_sigma);
    return v;
}

SSK3Lattice build_k3_ns(Int p, int sigma, K3Variant variant) {
    if (p == 2)
        throw domain_error("p = 2 is rejected: no full rank-22 recipe is tabulated for it");
    if (!is_prime(p)) throw domain_error("p must be prime");
    if (sigma < 1 || sigma > 10) throw domain_error("sigma must lie in 1..10");

    SSK3Lattice out;
    out.p = p;
    out.sigma = sigma;
    out.variant = variant;

    IntLattice lambda;
    if (sigma == 10) {
        lambda = direct_sum(direct_sum(hyperbolic_plane(p), build_hp(p)), build_vmn(p, 16, 16));
        out.branch = "U(p)+H(p)+V(16,16)";
    } else if (p % 4 == 3 && sigma % 2 == 1) {
        lambda = direct_sum(hyperbolic_plane(), build_vmn(p, 20, 2 * sigma));
        out.branch = "U+V(20," + std::to_string(2 * sigma) + ")";
    } else {
        int idx = variant == K3Variant::literal ? 2 * sigma : 2 * sigma - 2;
        lambda = direct_sum(direct_sum(hyperbolic_plane(), build_hp(p)), build_vmn(p, 16, idx));
        out.branch = "U+H(p)+V(16," + std::to_string(idx) + ")";
    }
    out.ns = rescale(lambda, -1);
    out.check = validate_ns(out.ns, p, sigma);
    return out;
}

SSAbelianLattice build_abelian_ns(Int p, int artin) {
    if (!is_prime(p)) throw domain_error("p must be prime");
    if (artin != 1 && artin != 2) throw domain_error("artin invariant must be 1 or 2");

    SSAbelianLattice out;
    out.p = p;
    out.artin = artin;

    IntLattice lambda;
    if (artin == 1) {
        if (p == 2) {
            lambda = direct_sum(hyperbolic_plane(), d4_lattice());
            out.branch = "U+D4";
        } else if (p % 4 == 3) {
            lambda = direct_sum(hyperbolic_plane(), build_vmn(p, 4, 2));
            out.branch = "U+V(4,2)";
        } else {
            lambda = direct_sum(hyperbolic_plane(), build_hp(p));
            out.branch = "U+H(p)";
        }
    } else {
        if (p == 2) {
            lambda = direct_sum(hyperbolic_plane(2), d4_lattice());
            out.branch = "U(2)+D4";
        } else {
            lambda = direct_sum(hyperbolic_plane(p), build_hp(p));
            out.branch = "U(p)+H(p)";
        }
    }
    out.ns = rescale(lambda, -1);
    out.check = validate_ns(out.ns, p, artin);
    return out;
}

int artin_invariant(const IntLattice& L, Int p) {
    if (p < 2 || !is_prime(p)) throw domain_error("artin invariant needs a prime p");
    BigInt det = determinant(L);
    if (det == 0) throw domain_error("degenerate lattice has no artin invariant");
    if (det < 0) det = -det;
    int e = 0;
    while (det % p == 0) { det /= p; ++e; }
    if (det != 1)
        throw domain_error("|det| is not a power of p");
    if (e % 2 != 0)
        throw domain_error("v_p(|det|) is odd; not of supersingular discriminant form");
    return e / 2;
}

std::vector<AuditRow> audit_k3(Int p) {
    std::vector<AuditRow> rows;
    for (int sigma = 1; sigma <= 10; ++sigma) {
        for (K3Variant variant : {K3Variant::literal, K3Variant::disc_corrected}) {
            AuditRow row;
            row.sigma = sigma;
            row.variant = variant;
            try {
                auto built = build_k3_ns(p, sigma, variant);
                row.built = true;
                row.branch = built.branch;
                row.check = built.check;
            } catch (const domain_error& e) {
                row.built = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace ssv
