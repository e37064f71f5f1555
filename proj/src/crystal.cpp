#include "ssv/crystal.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace ssv {
namespace {

Int to_int_checked(const BigInt& n) {
    if (n > std::numeric_limits<Int>::max())
        throw domain_error("slope multiplicity does not fit in a machine integer");
    return n.convert_to<Int>();
}

SlopeMultiset from_map(const std::map<BigRat, BigInt>& acc) {
    std::vector<std::pair<BigRat, Int>> raw;
    raw.reserve(acc.size());
    for (const auto& [slope, mult] : acc) raw.emplace_back(slope, to_int_checked(mult));
    return make_slopes(std::move(raw));
}

}  // namespace

Int SlopeMultiset::total_rank() const {
    Int r = 0;
    for (const auto& [slope, mult] : entries) r += mult;
    return r;
}

SlopeMultiset make_slopes(std::vector<std::pair<BigRat, Int>> raw) {
    for (const auto& [slope, mult] : raw) {
        if (slope < 0) throw domain_error("slopes must be nonnegative");
        if (mult < 0) throw domain_error("slope multiplicities must be nonnegative");
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SlopeMultiset s;
    for (auto& [slope, mult] : raw) {
        if (mult == 0) continue;
        if (!s.entries.empty() && s.entries.back().first == slope) {
            Int& m = s.entries.back().second;
            if (m > std::numeric_limits<Int>::max() - mult)
                throw domain_error("slope multiplicity does not fit in a machine integer");
            m += mult;
        } else {
            s.entries.emplace_back(slope, mult);
        }
    }
    return s;
}

Int NewtonPolygon::rank() const { return vertices.empty() ? 0 : vertices.back().first; }

void validate_polygon(const NewtonPolygon& np) {
    if (np.vertices.empty()) throw domain_error("polygon has no vertices");
    if (np.vertices.front() != std::pair<Int, BigRat>{0, BigRat(0)})
        throw domain_error("polygon must start at (0,0)");
    for (size_t i = 1; i < np.vertices.size(); ++i)
        if (np.vertices[i].first <= np.vertices[i - 1].first)
            throw domain_error("polygon x-coordinates must strictly increase");
    BigRat prev;
    bool have_prev = false;
    for (size_t i = 1; i < np.vertices.size(); ++i) {
        BigRat slope = (np.vertices[i].second - np.vertices[i - 1].second) /
                       BigRat(np.vertices[i].first - np.vertices[i - 1].first);
        if (have_prev && slope <= prev)
            throw domain_error("polygon segment slopes must strictly increase");
        prev = slope;
        have_prev = true;
    }
}

Int HodgeNumbers::total_rank() const {
    Int r = 0;
    for (const auto& [level, mult] : levels) r += mult;
    return r;
}

HodgeNumbers make_hodge(std::vector<std::pair<Int, Int>> raw) {
    for (const auto& [level, mult] : raw)
        if (mult < 0) throw domain_error("Hodge multiplicities must be nonnegative");
    std::sort(raw.begin(), raw.end());
    HodgeNumbers h;
    for (auto& [level, mult] : raw) {
        if (mult == 0) continue;
        if (!h.levels.empty() && h.levels.back().first == level)
            h.levels.back().second += mult;
        else
            h.levels.emplace_back(level, mult);
    }
    return h;
}

NewtonPolygon newton_from_valuations(const std::vector<std::optional<BigRat>>& vals) {
    if (vals.empty()) throw domain_error("no valuations given");
    if (!vals[0] || *vals[0] != 0)
        throw domain_error("the leading coefficient must have valuation 0");
    for (const auto& v : vals)
        if (v && *v < 0) throw domain_error("valuations must be nonnegative");

    // Monotone-chain lower hull over the finite points, left to right.  A
    // point is popped when it lies on or above the chord to the incoming one,
    // so only strict slope increases survive as vertices.
    std::vector<std::pair<Int, BigRat>> hull;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (!vals[i]) continue;
        std::pair<Int, BigRat> pt{(Int)i, *vals[i]};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            BigRat cross = BigRat(b.first - a.first) * (pt.second - a.second) -
                           (b.second - a.second) * BigRat(pt.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(std::move(pt));
    }
    NewtonPolygon np{std::move(hull)};
    validate_polygon(np);
    return np;
}

SlopeMultiset slopes_of(const NewtonPolygon& np) {
    validate_polygon(np);
    std::vector<std::pair<BigRat, Int>> raw;
    for (size_t i = 1; i < np.vertices.size(); ++i) {
        Int run = np.vertices[i].first - np.vertices[i - 1].first;
        raw.emplace_back((np.vertices[i].second - np.vertices[i - 1].second) / BigRat(run),
                         run);
    }
    return make_slopes(std::move(raw));
}

NewtonPolygon polygon_of(const SlopeMultiset& s) {
    NewtonPolygon np;
    Int x = 0;
    BigRat y = 0;
    np.vertices.emplace_back(x, y);
    for (const auto& [slope, mult] : s.entries) {
        x += mult;
        y += slope * BigRat(mult);
        np.vertices.emplace_back(x, y);
    }
    return np;
}

bool is_supersingular(const SlopeMultiset& s, Int degree) {
    return s.entries.size() == 1 && s.entries[0].first == BigRat(degree, 2);
}

bool is_ordinary(const NewtonPolygon& np, const HodgeNumbers& h) {
    validate_polygon(np);
    if (np.rank() != h.total_rank())
        throw domain_error("Newton and Hodge data have different ranks");
    NewtonPolygon hp;
    Int x = 0;
    BigRat y = 0;
    hp.vertices.emplace_back(x, y);
    for (const auto& [level, mult] : h.levels) {
        x += mult;
        y += BigRat(level) * BigRat(mult);
        hp.vertices.emplace_back(x, y);
    }
    return np == hp;
}

SlopeMultiset wedge_slopes(const SlopeMultiset& s, Int k) {
    const Int rank = s.total_rank();
    if (k < 0 || k > rank)
        throw domain_error("exterior power degree must lie between 0 and the rank");

    // Group knapsack: taking t copies from a slope of multiplicity m
    // contributes slope sum t*s with weight C(m, t).  f[j] maps a slope sum
    // reached with j copies to its count.
    std::vector<std::map<BigRat, BigInt>> f(k + 1);
    f[0][BigRat(0)] = 1;
    for (const auto& [slope, mult] : s.entries) {
        std::vector<std::map<BigRat, BigInt>> g(k + 1);
        for (Int j = 0; j <= k; ++j)
            for (const auto& [sum, count] : f[j])
                for (Int take = 0; take <= std::min(mult, k - j); ++take)
                    g[j + take][sum + slope * BigRat(take)] += count * binomial(mult, take);
        f = std::move(g);
    }
    return from_map(f[k]);
}

SlopeMultiset tensor_slopes(const SlopeMultiset& a, const SlopeMultiset& b) {
    std::map<BigRat, BigInt> acc;
    for (const auto& [sa, ma] : a.entries)
        for (const auto& [sb, mb] : b.entries) acc[sa + sb] += BigInt(ma) * mb;
    return from_map(acc);
}

SlopeMultiset tate_twist(const SlopeMultiset& s, Int n) {
    SlopeMultiset out;
    out.entries.reserve(s.entries.size());
    for (const auto& [slope, mult] : s.entries) {
        BigRat shifted = slope + n;
        if (shifted < 0) throw domain_error("Tate twist would produce a negative slope");
        out.entries.emplace_back(shifted, mult);
    }
    return out;
}

SlopeMultiset hilb_or_kummer_h2(const SlopeMultiset& s) {
    if (s.total_rank() != 6 && s.total_rank() != 22)
        throw domain_error("expected a surface H^2 slope multiset of rank 6 or 22");
    auto raw = s.entries;
    raw.emplace_back(BigRat(1), 1);
    return make_slopes(std::move(raw));
}

}  // namespace ssv
