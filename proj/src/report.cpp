#include "ssv/report.hpp"

#include <chrono>
#include <string>

#include "ssv/enumerate.hpp"

namespace ssv {

// Try the literal variant first and keep it when its determinant law checks
// out; otherwise fall back to the corrected index.  When neither variant
// produces an even lattice with |det| = p^(2*sigma) the failure is reported
// to the caller instead of silently shipping a lattice with the wrong
// discriminant.
SSK3Lattice pick_k3_variant(Int p, int sigma) {
    std::string reasons;
    for (K3Variant variant : {K3Variant::literal, K3Variant::disc_corrected}) {
        const char* tag = variant == K3Variant::literal ? "literal" : "disc_corrected";
        try {
            SSK3Lattice X = build_k3_ns(p, sigma, variant);
            if (X.check.matches_requested) return X;
            reasons += std::string(tag) + ": " + X.branch + " has v_p(|det|) = " +
                       std::to_string(X.check.det_p_exponent) + "; ";
        } catch (const domain_error& e) {
            reasons += std::string(tag) + ": " + e.what() + "; ";
        }
    }
    throw domain_error("no variant yields an even lattice with |det| = p^" +
                       std::to_string(2 * sigma) + " for p = " + std::to_string(p) +
                       ", sigma = " + std::to_string(sigma) + " (" + reasons + ")");
}

namespace {

LatVec find_square_two(const IntLattice& ns) {
    auto hit = find_first_with_value(ns, 2, 8);
    if (!hit) throw internal_error("no vector of square 2 within height 8 in a catalog lattice");
    return *hit;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t base, Int p, int sigma, ModuliKind kind) {
    std::uint64_t s = splitmix(base ^ static_cast<std::uint64_t>(p));
    s = splitmix(s ^ static_cast<std::uint64_t>(sigma));
    return splitmix(s ^ (kind == ModuliKind::k3 ? 1u : 2u));
}

}  // namespace

ReportBundle make_report(Int p, int sigma, const MukaiVector& v, ModuliKind kind, Int height_cap) {
    ReportBundle R;
    R.p = p;
    R.sigma = sigma;
    R.v = v;
    R.kind = kind;
    R.height_cap = height_cap;

    std::optional<SSAbelianLattice> A;
    if (kind == ModuliKind::k3) {
        SSK3Lattice X = pick_k3_variant(p, sigma);
        R.ns = X.ns;
        R.branch = X.branch;
        R.variant = X.variant;
        R.ns_check = X.check;
    } else {
        A = build_abelian_ns(p, sigma);
        R.ns = A->ns;
        R.branch = A->branch;
        R.ns_check = A->check;
    }

    if (static_cast<int>(v.c1.size()) != R.ns.rank)
        throw domain_error("c1 has " + std::to_string(v.c1.size()) + " coordinates but the lattice has rank " +
                           std::to_string(R.ns.rank));
    if (!coprime_to_p_raw(R.ns, v, p))
        throw domain_error("v is not coprime to p: p divides r, s and c1.NS");
    if (!is_mukai_primitive(v)) throw domain_error("v is not primitive");

    R.polarization = kind == ModuliKind::k3 ? find_square_two(R.ns) : find_principal_polarization(*A);
    R.generality_twist = find_generality_twist(R.ns, v, R.polarization, p);
    R.v_general = exp_twist(R.ns, v, R.generality_twist);
    if (!is_general_numeric(R.ns, R.v_general, R.polarization))
        throw internal_error("generality twist failed re-verification");

    R.elliptic = kind == ModuliKind::k3 ? find_elliptic_class(R.ns, v, p, height_cap)
                                        : find_elliptic_class_abelian(*A, v, height_cap);
    validate_elliptic_witness(R.ns, v, p, R.elliptic);

    R.dim = moduli_dimension(R.ns, v, kind);
    if (R.dim >= 4) {
        R.moduli = shioda_report(R.ns, v, kind);
        R.h2_slopes = hilb_or_kummer_h2(make_slopes({{BigRat(1), R.ns.rank}}));
    } else if (R.dim == 2) {
        // The moduli space is itself a surface with supersingular crystal.
        R.h2_slopes = make_slopes({{BigRat(1), 22}});
    }
    if (R.h2_slopes) R.h2_supersingular = is_supersingular(*R.h2_slopes, 2);

    const Int n = R.dim / 2;
    if (kind == ModuliKind::k3) {
        R.motive = hilb_motive(canonical_from_betti({1, 0, 22, 0, 1}), n);
    } else {
        R.motive = n == 0 ? tate_motive(0) : canonical_from_betti(kummer_betti(n));
    }
    R.betti = betti_of(R.motive);
    if (R.moduli && R.betti.size() > 2 && R.betti[2] != R.moduli->b2_target)
        throw internal_error("second Betti number disagrees with the moduli target");
    R.chow = chow_rank_report(R.betti);
    return R;
}

MukaiVector sample_mukai_vector(std::mt19937_64& rng, const IntLattice& ns, Int p, Int r_lo,
                                Int r_hi) {
    if (r_lo < 1 || r_hi < r_lo) throw domain_error("need 1 <= r_lo <= r_hi");
    const std::uint64_t span = static_cast<std::uint64_t>(r_hi - r_lo + 1);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        MukaiVector v;
        v.r = r_lo + static_cast<Int>(rng() % span);
        v.c1.resize(ns.rank);
        for (Int& c : v.c1) c = static_cast<Int>(rng() % 19) - 9;
        v.s = static_cast<Int>(rng() % 101) - 50;
        if (is_mukai_primitive(v) && coprime_to_p_raw(ns, v, p)) return v;
    }
    throw internal_error("sampling failed to produce a primitive vector coprime to p");
}

BatchResult run_batch(const BatchSpec& spec) {
    if (spec.ps.empty() || spec.sigmas.empty() || spec.kinds.empty())
        throw domain_error("batch grid needs at least one p, sigma and kind");
    if (spec.vectors_per_cell < 1) throw domain_error("vectors_per_cell must be positive");
    if (spec.r_lo < 1 || spec.r_hi < spec.r_lo) throw domain_error("need 1 <= r_lo <= r_hi");

    BatchResult result;
    for (Int p : spec.ps)
        for (int sigma : spec.sigmas)
            for (ModuliKind kind : spec.kinds) {
                BatchCell cell;
                cell.p = p;
                cell.sigma = sigma;
                cell.kind = kind;
                result.cells.push_back(cell);
            }

    const int total = static_cast<int>(result.cells.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < total; ++i) {
        BatchCell& cell = result.cells[static_cast<size_t>(i)];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            IntLattice ns;
            std::optional<SSAbelianLattice> A;
            if (cell.kind == ModuliKind::k3) {
                ns = pick_k3_variant(cell.p, cell.sigma).ns;
            } else {
                A = build_abelian_ns(cell.p, cell.sigma);
                ns = A->ns;
            }
            const LatVec H = cell.kind == ModuliKind::k3 ? find_square_two(ns)
                                                         : find_principal_polarization(*A);
            std::mt19937_64 rng(cell_seed(spec.seed, cell.p, cell.sigma, cell.kind));
            for (int k = 0; k < spec.vectors_per_cell; ++k) {
                const MukaiVector v = sample_mukai_vector(rng, ns, cell.p, spec.r_lo, spec.r_hi);
                const EllipticWitness wit =
                    cell.kind == ModuliKind::k3
                        ? find_elliptic_class(ns, v, cell.p, spec.height_cap)
                        : find_elliptic_class_abelian(*A, v, spec.height_cap);
                validate_elliptic_witness(ns, v, cell.p, wit);
                const LatVec L = find_generality_twist(ns, v, H, cell.p);
                if (!is_general_numeric(ns, exp_twist(ns, v, L), H))
                    throw internal_error("generality twist failed re-verification");
                ++cell.vectors;
            }
            cell.pass = true;
        } catch (const std::exception& e) {
            cell.pass = false;
            cell.error = e.what();
        }
        cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    result.all_pass = true;
    for (const BatchCell& cell : result.cells) result.all_pass = result.all_pass && cell.pass;
    return result;
}

}  // namespace ssv
