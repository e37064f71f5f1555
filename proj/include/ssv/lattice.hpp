#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ssv {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Coordinate vector in the fixed basis of some IntLattice.  Length must match
// the lattice rank; ops check this.
using LatVec = std::vector<Int>;

// Input violates a documented precondition.  The CLI maps these to exit 2.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A theory-backed invariant failed at runtime (bounded search exhausted its cap,
// re-validation of a witness failed, ...).  The CLI maps these to exit 3.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Free Z-module of finite rank with a symmetric integer bilinear form, stored
// as the Gram matrix of the defining basis.
struct IntLattice {
    int rank = 0;
    std::vector<std::vector<Int>> gram;

    IntLattice() = default;
    IntLattice(int r, std::vector<std::vector<Int>> g);
};

Int pairing(const IntLattice& L, const LatVec& x, const LatVec& y);
inline Int norm(const IntLattice& L, const LatVec& x) { return pairing(L, x, x); }

// Exact determinant of the Gram matrix (Bareiss, fraction-free).
BigInt determinant(const IntLattice& L);

// (n_plus, n_minus) of the form over Q; throws domain_error if degenerate.
std::pair<int, int> signature(const IntLattice& L);

// All diagonal Gram entries even.
bool is_even(const IntLattice& L);

// L(n): same module, form multiplied by n.  n = 0 rejected.
IntLattice rescale(const IntLattice& L, Int n);

IntLattice direct_sum(const IntLattice& a, const IntLattice& b);

// gcd of coordinates is 1.  The zero vector is rejected (it generates no
// direct summand, so primitivity is undefined for it).
bool is_primitive(const LatVec& x);

// m | x.b for every basis vector b of L.
bool divides_pairing(const IntLattice& L, const LatVec& x, Int m);

Int gcd_int(Int a, Int b);
Int content(const LatVec& x);   // gcd of all coordinates, 0 for the zero vector

// C(n, k) exactly; 0 for k < 0 or k > n.  n must be nonnegative.
BigInt binomial(Int n, Int k);

// Stock lattices.
IntLattice hyperbolic_plane();          // U
IntLattice hyperbolic_plane(Int n);     // U(n)
IntLattice d4_lattice();                // positive definite, det 4
IntLattice e8_lattice();                // positive definite, det 1
IntLattice diagonal_lattice(const std::vector<Int>& d);

}  // namespace ssv
