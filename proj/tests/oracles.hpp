#pragma once

// Independent reference computations for tests.  These deliberately use
// different algorithms from the library (cofactor expansion instead of
// Bareiss, quadratic-time hull instead of monotone chain, ...) so agreement
// is meaningful.

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "ssv/lattice.hpp"

namespace oracle {

inline ssv::BigInt det_cofactor(const std::vector<std::vector<ssv::BigInt>>& m) {
    const int n = (int)m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    ssv::BigInt acc = 0;
    for (int c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<ssv::BigInt>> minor(n - 1, std::vector<ssv::BigInt>(n - 1));
        for (int i = 1; i < n; ++i) {
            int jj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[i - 1][jj++] = m[i][j];
            }
        }
        ssv::BigInt term = m[0][c] * det_cofactor(minor);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

inline ssv::BigInt det_cofactor(const ssv::IntLattice& L) {
    std::vector<std::vector<ssv::BigInt>> m(L.rank, std::vector<ssv::BigInt>(L.rank));
    for (int i = 0; i < L.rank; ++i)
        for (int j = 0; j < L.rank; ++j) m[i][j] = L.gram[i][j];
    return det_cofactor(m);
}

inline ssv::IntLattice random_symmetric_lattice(std::mt19937_64& rng, int rank, ssv::Int lo,
                                                ssv::Int hi) {
    std::uniform_int_distribution<ssv::Int> d(lo, hi);
    std::vector<std::vector<ssv::Int>> g(rank, std::vector<ssv::Int>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = i; j < rank; ++j) g[i][j] = g[j][i] = d(rng);
    return ssv::IntLattice(rank, std::move(g));
}

// Lower-hull value at abscissa x: minimum over every chord between two input
// points that spans x (and over points sitting at x themselves).  Quadratic
// per query, no hull construction at all.
inline ssv::BigRat hull_min_at(const std::vector<std::pair<ssv::Int, ssv::BigRat>>& pts,
                               ssv::Int x) {
    bool found = false;
    ssv::BigRat best;
    auto consider = [&](const ssv::BigRat& v) {
        if (!found || v < best) {
            best = v;
            found = true;
        }
    };
    for (const auto& p : pts)
        if (p.first == x) consider(p.second);
    for (const auto& a : pts)
        for (const auto& b : pts) {
            if (a.first >= b.first || x < a.first || x > b.first) continue;
            consider((ssv::BigRat(b.first - x) * a.second +
                      ssv::BigRat(x - a.first) * b.second) /
                     ssv::BigRat(b.first - a.first));
        }
    if (!found) throw std::runtime_error("hull oracle queried outside the point range");
    return best;
}

// All k-element subsets of a flat slope list, sums counted by brute force.
// Exponential; callers keep the list short.
inline std::map<ssv::BigRat, long long> wedge_enumerate(const std::vector<ssv::BigRat>& slopes,
                                                        int k) {
    const int n = (int)slopes.size();
    std::map<ssv::BigRat, long long> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        ssv::BigRat sum = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sum += slopes[i];
        ++out[sum];
    }
    return out;
}

}  // namespace oracle
