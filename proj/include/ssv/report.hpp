#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "ssv/catalog.hpp"
#include "ssv/crystal.hpp"
#include "ssv/motive.hpp"
#include "ssv/mukai.hpp"
#include "ssv/search.hpp"

namespace ssv {

// Everything the end-to-end pipeline derives from (p, sigma, v, kind), with
// each embedded witness re-verified during assembly.  Sections that need a
// moduli space of dimension >= 4 (Shioda certificate, the added slope-1
// class) are left empty below that threshold instead of being faked.
struct ReportBundle {
    // Inputs.
    Int p = 0;
    int sigma = 0;               // Artin invariant; 1..10 for k3, 1..2 for abelian
    MukaiVector v;
    ModuliKind kind = ModuliKind::k3;
    Int height_cap = 16;

    // Neron-Severi lattice actually used.
    IntLattice ns;
    std::string branch;
    std::optional<K3Variant> variant;   // k3 only
    LatticeValidation ns_check;

    // Polarization and the twist that makes v numerically general for it.
    LatVec polarization;
    LatVec generality_twist;
    MukaiVector v_general;

    // Elliptic-class witness for v itself.
    EllipticWitness elliptic;

    // Moduli-space consequences.
    Int dim = 0;
    std::optional<ModuliReport> moduli;      // dim >= 4 only

    // Degree-2 slope data of the moduli space: rank ns.rank + 2 for
    // dim >= 4, the full K3 line for dim == 2, absent for a point.
    std::optional<SlopeMultiset> h2_slopes;
    bool h2_supersingular = false;

    // Motive of the moduli space in canonical form.
    SSMotive motive;
    BettiVector betti;
    ChowReport chow;
};

// Variant auto-selection: the literal recipe when its determinant law checks
// out, the corrected index otherwise.  Throws domain_error when neither
// variant produces an even lattice with |det| = p^(2*sigma).
SSK3Lattice pick_k3_variant(Int p, int sigma);

// Runs the whole pipeline.  Throws domain_error on precondition failures
// (bad catalog parameters, v not coprime to p, v not primitive, dimension
// preconditions) and internal_error when a bounded search or a witness
// re-verification fails.
ReportBundle make_report(Int p, int sigma, const MukaiVector& v, ModuliKind kind,
                         Int height_cap = 16);

// Seeded Mukai-vector sampler shared by the batch harness and the test
// suites: r uniform in [r_lo, r_hi], c1 coordinates in [-9, 9], s in
// [-50, 50], resampled until primitive and coprime to p.  Uses rng() % span
// directly so the stream is identical across platforms.
MukaiVector sample_mukai_vector(std::mt19937_64& rng, const IntLattice& ns, Int p, Int r_lo,
                                Int r_hi);

// Parameter grid for the batch harness; the cell list is the cartesian
// product ps x sigmas x kinds.
struct BatchSpec {
    std::vector<Int> ps;
    std::vector<int> sigmas;
    std::vector<ModuliKind> kinds;
    int vectors_per_cell = 3;
    Int r_lo = 1, r_hi = 50;
    std::uint64_t seed = 1;
    Int height_cap = 16;
};

struct BatchCell {
    Int p = 0;
    int sigma = 0;
    ModuliKind kind = ModuliKind::k3;
    int vectors = 0;
    bool pass = false;
    std::string error;       // first failure, empty when pass
    double seconds = 0.0;
};

struct BatchResult {
    std::vector<BatchCell> cells;
    bool all_pass = false;
};

// Per cell: builds the lattice, then for each seeded vector finds and
// re-validates an elliptic witness and a generality twist.  Cells are
// independent and may run on a worker pool; results always come back in
// grid order.  The per-cell seed depends only on (seed, p, sigma, kind), so
// a cell's vector stream is stable under grid reshaping.
BatchResult run_batch(const BatchSpec& spec);

}  // namespace ssv
