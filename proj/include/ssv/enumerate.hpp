#pragma once

#include <functional>
#include <optional>

#include "ssv/lattice.hpp"

namespace ssv {

using VecPred = std::function<bool(const LatVec&)>;

// All primitive x with Q(x) = target, 0 < max|x_i| <= height_bound and
// pred(x) true (when given), one representative per antipodal pair (the one
// whose first nonzero coordinate is positive), ordered by
// (max|x_i|, lexicographic on coordinates).
//
// Pruned depth-first scan over height shells; shells may be worked in parallel
// internally, but the returned order is canonical and run-independent.
// Intended regime: |gram entries| * rank^2 * height^2 within int64.
std::vector<LatVec> enumerate_with_value(const IntLattice& L, Int target, Int height_bound,
                                         const VecPred& pred = {});

inline std::vector<LatVec> enumerate_isotropic(const IntLattice& L, Int height_bound,
                                               const VecPred& pred = {}) {
    return enumerate_with_value(L, 0, height_bound, pred);
}

// First element of the canonical enumeration up to height_cap, scanning shells
// of increasing height and stopping at the first hit.
std::optional<LatVec> find_first_with_value(const IntLattice& L, Int target, Int height_cap,
                                            const VecPred& pred = {});

// Serial reference enumerator: walks the whole coordinate box with no pruning
// and sorts the survivors into canonical order.  Kept as the oracle for the
// pruned kernel and as the benchmark baseline; feasible for small rank only.
std::vector<LatVec> enumerate_with_value_serial(const IntLattice& L, Int target, Int height_bound,
                                                const VecPred& pred = {});

}  // namespace ssv
