#include "ssv/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ssv {

IntLattice::IntLattice(int r, std::vector<std::vector<Int>> g) : rank(r), gram(std::move(g)) {
    if (rank < 0) throw domain_error("lattice rank must be nonnegative");
    if ((int)gram.size() != rank) throw domain_error("gram matrix size does not match rank");
    for (const auto& row : gram)
        if ((int)row.size() != rank) throw domain_error("gram matrix is not square");
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            if (gram[i][j] != gram[j][i]) throw domain_error("gram matrix is not symmetric");
}

Int pairing(const IntLattice& L, const LatVec& x, const LatVec& y) {
    if ((int)x.size() != L.rank || (int)y.size() != L.rank)
        throw domain_error("vector length does not match lattice rank");
    Int acc = 0;
    for (int i = 0; i < L.rank; ++i) {
        if (x[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < L.rank; ++j) row += L.gram[i][j] * y[j];
        acc += x[i] * row;
    }
    return acc;
}

BigInt determinant(const IntLattice& L) {
    const int n = L.rank;
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = L.gram[i][j];

    // Bareiss: stays integral throughout, final pivot is the determinant.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::pair<int, int> signature(const IntLattice& L) {
    const int n = L.rank;
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = L.gram[i][j];

    // Symmetric congruence diagonalization over Q.  Zero pivots are repaired by
    // a diagonal swap if possible, otherwise by adding a row/column that pairs
    // nontrivially with the pivot position (turning 0 into 2a_kj).
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            int sw = -1, mix = -1;
            for (int j = k + 1; j < n; ++j) {
                if (a[j][j] != 0 && sw < 0) sw = j;
                if (a[k][j] != 0 && mix < 0) mix = j;
            }
            if (sw >= 0) {
                for (int i = 0; i < n; ++i) std::swap(a[i][k], a[i][sw]);
                std::swap(a[k], a[sw]);
            } else if (mix >= 0) {
                for (int i = 0; i < n; ++i) a[i][k] += a[i][mix];
                for (int j = 0; j < n; ++j) a[k][j] += a[mix][j];
            } else {
                throw domain_error("degenerate form: signature undefined");
            }
        }
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            BigRat f = a[i][k] / a[k][k];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            for (int j = 0; j < n; ++j) a[j][i] -= f * a[j][k];
        }
        if (a[k][k] > 0) ++pos; else ++neg;
    }
    return {pos, neg};
}

bool is_even(const IntLattice& L) {
    for (int i = 0; i < L.rank; ++i)
        if (L.gram[i][i] % 2 != 0) return false;
    return true;
}

IntLattice rescale(const IntLattice& L, Int n) {
    if (n == 0) throw domain_error("rescale by 0 is not a lattice");
    auto g = L.gram;
    for (auto& row : g)
        for (auto& v : row) v *= n;
    return IntLattice(L.rank, std::move(g));
}

IntLattice direct_sum(const IntLattice& a, const IntLattice& b) {
    const int n = a.rank + b.rank;
    std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < a.rank; ++i)
        for (int j = 0; j < a.rank; ++j) g[i][j] = a.gram[i][j];
    for (int i = 0; i < b.rank; ++i)
        for (int j = 0; j < b.rank; ++j) g[a.rank + i][a.rank + j] = b.gram[i][j];
    return IntLattice(n, std::move(g));
}

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { Int t = a % b; a = b; b = t; }
    return a;
}

Int content(const LatVec& x) {
    Int g = 0;
    for (Int c : x) g = gcd_int(g, c);
    return g;
}

BigInt binomial(Int n, Int k) {
    if (n < 0) throw domain_error("binomial requires nonnegative n");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (Int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;   // exact: r is C(n-k+i, i) after this step
    }
    return r;
}

bool is_primitive(const LatVec& x) {
    Int g = content(x);
    if (g == 0) throw domain_error("primitivity is undefined for the zero vector");
    return g == 1;
}

bool divides_pairing(const IntLattice& L, const LatVec& x, Int m) {
    if ((int)x.size() != L.rank)
        throw domain_error("vector length does not match lattice rank");
    if (m == 0) throw domain_error("divisibility by 0");
    for (int j = 0; j < L.rank; ++j) {
        Int v = 0;
        for (int i = 0; i < L.rank; ++i) v += x[i] * L.gram[i][j];
        if (v % m != 0) return false;
    }
    return true;
}

IntLattice hyperbolic_plane() { return hyperbolic_plane(1); }

IntLattice hyperbolic_plane(Int n) {
    return IntLattice(2, {{0, n}, {n, 0}});
}

IntLattice d4_lattice() {
    return IntLattice(4, {{2, -1, 0, 0},
                          {-1, 2, -1, -1},
                          {0, -1, 2, 0},
                          {0, -1, 0, 2}});
}

IntLattice e8_lattice() {
    // Root basis: chain of seven A_1-linked nodes with the branch at node 3.
    return IntLattice(8, {{2, -1, 0, 0, 0, 0, 0, 0},
                          {-1, 2, -1, 0, 0, 0, 0, 0},
                          {0, -1, 2, -1, 0, 0, 0, -1},
                          {0, 0, -1, 2, -1, 0, 0, 0},
                          {0, 0, 0, -1, 2, -1, 0, 0},
                          {0, 0, 0, 0, -1, 2, -1, 0},
                          {0, 0, 0, 0, 0, -1, 2, 0},
                          {0, 0, -1, 0, 0, 0, 0, 2}});
}

IntLattice diagonal_lattice(const std::vector<Int>& d) {
    const int n = (int)d.size();
    std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = d[i];
    return IntLattice(n, std::move(g));
}

}  // namespace ssv
