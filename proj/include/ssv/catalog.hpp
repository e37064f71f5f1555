#pragma once

#include <optional>
#include <string>

#include "ssv/lattice.hpp"

namespace ssv {

// Parameters of the rank-4 positive definite lattice H(p): the smallest prime
// q = 3 (mod 8) with -q a quadratic non-residue mod p, and the smallest
// gamma in [0, q) with q | gamma^2 + p.
struct HpParams {
    Int p = 0, q = 0, gamma = 0;
};

bool is_prime(Int n);
Int legendre_symbol(Int a, Int p);   // a^((p-1)/2) mod p, reported as -1/0/1

HpParams find_hp_params(Int p);
IntLattice build_hp(Int p);          // even, positive definite, det p^2

// V(p; m, n): the even-coordinate-sum sublattice of the diagonal form
// (p,...,p,1,...,1) (n copies of p), glued by the half-sum vector.
// |det| = p^n.  Throws if the glue square is not an even integer.
IntLattice build_vmn(Int p, int m, int n);

enum class K3Variant { literal, disc_corrected };

// Facts about a built Neron-Severi candidate, recorded rather than assumed.
struct LatticeValidation {
    bool even = false;
    int rank = 0;
    std::pair<int, int> sig{0, 0};
    BigInt abs_det;
    int det_p_exponent = -1;     // v_p(|det|), or -1 if |det| is not a pure p power
    int sigma_computed = -1;     // det_p_exponent / 2 when that is a clean even power
    bool matches_requested = false;
};

LatticeValidation validate_ns(const IntLattice& ns, Int p, int requested_sigma);

struct SSK3Lattice {
    IntLattice ns;          // signature (1, 21)
    Int p = 0;
    int sigma = 0;
    K3Variant variant = K3Variant::literal;
    std::string branch;     // which summand recipe was used
    LatticeValidation check;
};

// Supersingular K3 Neron-Severi lattice for odd p, sigma in 1..10.  p = 2 is
// rejected (only partial structure results exist there).  The `literal` and
// `disc_corrected` variants differ in the V-lattice index used alongside H(p):
// 2*sigma vs 2*sigma - 2.  Neither is asserted as "the" correct one; the
// validation block records what was actually built.
SSK3Lattice build_k3_ns(Int p, int sigma, K3Variant variant = K3Variant::literal);

struct SSAbelianLattice {
    IntLattice ns;          // rank 6, signature (1, 5)
    Int p = 0;
    int artin = 0;
    std::string branch;
    LatticeValidation check;
};

// Supersingular abelian-surface Neron-Severi lattice, artin in {1, 2}.
// p = 2 is supported here (D4 summand).
SSAbelianLattice build_abelian_ns(Int p, int artin);

// v_p(|det L|) / 2.  Requires |det| to be a p power with even exponent.
int artin_invariant(const IntLattice& L, Int p);

struct AuditRow {
    int sigma = 0;
    K3Variant variant = K3Variant::literal;
    std::string branch;
    bool built = false;
    std::string error;              // when built == false
    LatticeValidation check;        // when built == true
};

// Both variants across sigma = 1..10 for one p, build failures included.
std::vector<AuditRow> audit_k3(Int p);

}  // namespace ssv
