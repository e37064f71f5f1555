#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "oracles.hpp"
#include "ssv/crystal.hpp"

using namespace ssv;

namespace {

SlopeMultiset slopes(std::vector<std::pair<BigRat, Int>> raw) {
    return make_slopes(std::move(raw));
}

std::optional<BigRat> inf() { return std::nullopt; }

// Piecewise-linear evaluation of a polygon at an integer abscissa.
BigRat polygon_value(const NewtonPolygon& np, Int x) {
    for (size_t i = 1; i < np.vertices.size(); ++i) {
        const auto& [x0, y0] = np.vertices[i - 1];
        const auto& [x1, y1] = np.vertices[i];
        if (x0 <= x && x <= x1)
            return (BigRat(x1 - x) * y0 + BigRat(x - x0) * y1) / BigRat(x1 - x0);
    }
    REQUIRE(x == 0);
    return np.vertices[0].second;
}

}  // namespace

TEST_CASE("make_slopes sorts, merges and validates") {
    auto s = slopes({{BigRat(1), 2}, {BigRat(0), 1}, {BigRat(1), 3}});
    CHECK(s.entries == std::vector<std::pair<BigRat, Int>>{{BigRat(0), 1}, {BigRat(1), 5}});
    CHECK(s.total_rank() == 6);

    CHECK(slopes({{BigRat(2), 0}}).entries.empty());
    CHECK(slopes({}).total_rank() == 0);
    CHECK_THROWS_AS(slopes({{BigRat(-1, 2), 1}}), domain_error);
    CHECK_THROWS_AS(slopes({{BigRat(1), -1}}), domain_error);
}

TEST_CASE("newton_from_valuations on pinned shapes") {
    SUBCASE("straight line of slope 1") {
        auto np = newton_from_valuations({BigRat(0), BigRat(1), BigRat(2)});
        CHECK(np.vertices ==
              std::vector<std::pair<Int, BigRat>>{{0, BigRat(0)}, {2, BigRat(2)}});
        CHECK(slopes_of(np) == slopes({{BigRat(1), 2}}));
    }
    SUBCASE("one slope-0 and one slope-1 segment") {
        auto np = newton_from_valuations({BigRat(0), BigRat(0), BigRat(1)});
        CHECK(np.vertices == std::vector<std::pair<Int, BigRat>>{
                                 {0, BigRat(0)}, {1, BigRat(0)}, {2, BigRat(1)}});
        CHECK(slopes_of(np) == slopes({{BigRat(0), 1}, {BigRat(1), 1}}));
    }
    SUBCASE("rank-22 slope-1 line") {
        std::vector<std::optional<BigRat>> vals;
        for (Int i = 0; i <= 22; ++i) vals.emplace_back(BigRat(i));
        auto s = slopes_of(newton_from_valuations(vals));
        CHECK(s == slopes({{BigRat(1), 22}}));
        CHECK(is_supersingular(s, 2));
    }
    SUBCASE("interior points above the hull and infinities do not matter") {
        // (1,5) lies above the chord (0,0)-(2,1); an infinite valuation is a
        // missing point entirely.
        auto np = newton_from_valuations({BigRat(0), BigRat(5), BigRat(1)});
        CHECK(np.vertices ==
              std::vector<std::pair<Int, BigRat>>{{0, BigRat(0)}, {2, BigRat(1)}});
        CHECK(newton_from_valuations({BigRat(0), inf(), BigRat(1)}) == np);
        CHECK(slopes_of(np) == slopes({{BigRat(1, 2), 2}}));
    }
    SUBCASE("collinear interior points are not vertices") {
        auto np = newton_from_valuations({BigRat(0), BigRat(1), BigRat(2), BigRat(4)});
        CHECK(np.vertices == std::vector<std::pair<Int, BigRat>>{
                                 {0, BigRat(0)}, {2, BigRat(2)}, {3, BigRat(4)}});
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(newton_from_valuations({}), domain_error);
        CHECK_THROWS_AS(newton_from_valuations({inf(), BigRat(1)}), domain_error);
        CHECK_THROWS_AS(newton_from_valuations({BigRat(1), BigRat(2)}), domain_error);
        CHECK_THROWS_AS(newton_from_valuations({BigRat(0), BigRat(-1)}), domain_error);
    }
}

TEST_CASE("hull agrees with the quadratic chord-minimum oracle") {
    std::mt19937_64 rng(0x4e65777430ull);
    for (int trial = 0; trial < 300; ++trial) {
        const Int rank = 2 + (Int)(rng() % 23);   // up to 24
        std::vector<std::optional<BigRat>> vals{BigRat(0)};
        std::vector<std::pair<Int, BigRat>> pts{{0, BigRat(0)}};
        for (Int i = 1; i <= rank; ++i) {
            if (rng() % 5 == 0 && i != rank) {
                vals.push_back(inf());
                continue;
            }
            BigRat v((Int)(rng() % 10), 1 + (Int)(rng() % 3));
            vals.emplace_back(v);
            pts.emplace_back(i, v);
        }
        auto np = newton_from_valuations(vals);
        REQUIRE(np.rank() == pts.back().first);
        for (Int x = 0; x <= np.rank(); ++x)
            CHECK(polygon_value(np, x) == oracle::hull_min_at(pts, x));
        // Every vertex must be one of the input points.
        for (const auto& v : np.vertices)
            CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
    }
}

TEST_CASE("slope and polygon presentations are mutually inverse") {
    std::vector<SlopeMultiset> cases = {
        slopes({}),
        slopes({{BigRat(1), 22}}),
        slopes({{BigRat(0), 1}, {BigRat(1), 20}, {BigRat(2), 1}}),
        slopes({{BigRat(1, 2), 4}}),
        slopes({{BigRat(1, 3), 3}, {BigRat(1, 2), 2}, {BigRat(5, 2), 7}}),
    };
    for (const auto& s : cases) {
        auto np = polygon_of(s);
        validate_polygon(np);
        CHECK(slopes_of(np) == s);
        CHECK(polygon_of(slopes_of(np)) == np);
        CHECK(np.rank() == s.total_rank());
    }
}

TEST_CASE("validate_polygon rejects malformed vertex lists") {
    CHECK_THROWS_AS(validate_polygon(NewtonPolygon{{}}), domain_error);
    CHECK_THROWS_AS(validate_polygon(NewtonPolygon{{{1, BigRat(0)}}}), domain_error);
    CHECK_THROWS_AS(
        validate_polygon(NewtonPolygon{{{0, BigRat(0)}, {2, BigRat(1)}, {2, BigRat(2)}}}),
        domain_error);
    // Slopes 1 then 1/2: concave.
    CHECK_THROWS_AS(
        validate_polygon(NewtonPolygon{{{0, BigRat(0)}, {1, BigRat(1)}, {3, BigRat(2)}}}),
        domain_error);
    // Collinear split: slope repeats, so the middle vertex is redundant.
    CHECK_THROWS_AS(
        validate_polygon(NewtonPolygon{{{0, BigRat(0)}, {1, BigRat(1)}, {2, BigRat(2)}}}),
        domain_error);
}

TEST_CASE("supersingularity is the straight-line-of-slope-i/2 test") {
    CHECK(is_supersingular(slopes({{BigRat(1), 22}}), 2));
    CHECK(is_supersingular(slopes({{BigRat(1, 2), 4}}), 1));
    CHECK(is_supersingular(slopes({{BigRat(3, 2), 4}}), 3));
    CHECK_FALSE(is_supersingular(slopes({{BigRat(0), 1}, {BigRat(1), 20}, {BigRat(2), 1}}), 2));
    CHECK_FALSE(is_supersingular(slopes({{BigRat(1), 22}}), 4));
    CHECK_FALSE(is_supersingular(slopes({}), 0));
    // Slope-level test only: rank does not enter.
    CHECK(is_supersingular(slopes({{BigRat(1), 7}}), 2));
}

TEST_CASE("ordinarity compares Newton against Hodge") {
    auto hodge_k3 = make_hodge({{0, 1}, {1, 20}, {2, 1}});
    auto ordinary = polygon_of(slopes({{BigRat(0), 1}, {BigRat(1), 20}, {BigRat(2), 1}}));
    auto ss = polygon_of(slopes({{BigRat(1), 22}}));
    CHECK(is_ordinary(ordinary, hodge_k3));
    CHECK_FALSE(is_ordinary(ss, hodge_k3));
    CHECK(is_ordinary(polygon_of(slopes({{BigRat(0), 1}})), make_hodge({{0, 1}})));
    CHECK_THROWS_AS(is_ordinary(ss, make_hodge({{0, 1}, {1, 2}})), domain_error);
    // make_hodge merges duplicate levels.
    CHECK(make_hodge({{1, 2}, {0, 1}, {1, 1}}) == make_hodge({{0, 1}, {1, 3}}));
    CHECK_THROWS_AS(make_hodge({{0, -2}}), domain_error);
}

TEST_CASE("wedge powers on pinned cases") {
    auto h1_ssab = slopes({{BigRat(1, 2), 4}});
    CHECK(wedge_slopes(h1_ssab, 2) == slopes({{BigRat(1), 6}}));
    CHECK(wedge_slopes(h1_ssab, 1) == h1_ssab);
    CHECK(wedge_slopes(h1_ssab, 0) == slopes({{BigRat(0), 1}}));
    CHECK(wedge_slopes(h1_ssab, 4) == slopes({{BigRat(2), 1}}));
    CHECK(wedge_slopes(slopes({{BigRat(0), 1}, {BigRat(1), 1}}), 2) ==
          slopes({{BigRat(1), 1}}));
    CHECK_THROWS_AS(wedge_slopes(h1_ssab, 5), domain_error);
    CHECK_THROWS_AS(wedge_slopes(h1_ssab, -1), domain_error);
}

TEST_CASE("wedge powers agree with brute-force subset enumeration") {
    std::mt19937_64 rng(0x57656467ull);
    for (int trial = 0; trial < 60; ++trial) {
        // Small random multiset, flat size <= 10.
        std::vector<std::pair<BigRat, Int>> raw;
        std::vector<BigRat> flat;
        Int remaining = 2 + (Int)(rng() % 9);
        while (remaining > 0) {
            BigRat slope((Int)(rng() % 6), 1 + (Int)(rng() % 2));
            Int mult = 1 + (Int)(rng() % remaining);
            raw.emplace_back(slope, mult);
            for (Int i = 0; i < mult; ++i) flat.push_back(slope);
            remaining -= mult;
        }
        auto s = make_slopes(raw);
        const Int rank = s.total_rank();
        const Int k = (Int)(rng() % (rank + 1));
        auto got = wedge_slopes(s, k);
        auto want = oracle::wedge_enumerate(flat, (int)k);
        REQUIRE(got.entries.size() == want.size());
        for (const auto& [slope, mult] : got.entries) {
            auto it = want.find(slope);
            REQUIRE(it != want.end());
            CHECK(mult == it->second);
        }
        // Mass and first-moment invariants.
        CHECK(BigInt(got.total_rank()) == binomial(rank, k));
        BigRat moment_in = 0, moment_out = 0;
        for (const auto& [slope, mult] : s.entries) moment_in += slope * BigRat(mult);
        for (const auto& [slope, mult] : got.entries) moment_out += slope * BigRat(mult);
        CHECK(moment_out == moment_in * BigRat(binomial(rank - 1, k - 1)));
    }
}

TEST_CASE("every wedge power of a supersingular H^1 is supersingular") {
    auto h1 = slopes({{BigRat(1, 2), 4}});
    for (Int n = 0; n <= 4; ++n) CHECK(is_supersingular(wedge_slopes(h1, n), n));
}

TEST_CASE("tensor products of slope data") {
    auto h1 = slopes({{BigRat(1, 2), 4}});
    CHECK(tensor_slopes(h1, h1) == slopes({{BigRat(1), 16}}));
    CHECK(tensor_slopes(slopes({{BigRat(0), 1}}), h1) == h1);
    auto a = slopes({{BigRat(0), 2}, {BigRat(1, 3), 3}});
    auto b = slopes({{BigRat(1, 2), 1}, {BigRat(2), 4}});
    CHECK(tensor_slopes(a, b) == tensor_slopes(b, a));
    CHECK(tensor_slopes(a, b).total_rank() == a.total_rank() * b.total_rank());
    CHECK(tensor_slopes(a, b) ==
          slopes({{BigRat(1, 2), 2}, {BigRat(5, 6), 3}, {BigRat(2), 8}, {BigRat(7, 3), 12}}));
}

TEST_CASE("Tate twists shift slopes uniformly") {
    auto line = slopes({{BigRat(1), 22}});
    CHECK(tate_twist(line, 1) == slopes({{BigRat(2), 22}}));
    CHECK(tate_twist(line, 0) == line);
    CHECK(tate_twist(line, -1) == slopes({{BigRat(0), 22}}));
    CHECK(tate_twist(slopes({{BigRat(1, 2), 4}}), 1) == slopes({{BigRat(3, 2), 4}}));
    CHECK_THROWS_AS(tate_twist(slopes({{BigRat(1, 2), 4}}), -1), domain_error);
}

TEST_CASE("H^2 of the dimension >= 4 constructions adds one slope-1 class") {
    CHECK(hilb_or_kummer_h2(slopes({{BigRat(1), 22}})) == slopes({{BigRat(1), 23}}));
    CHECK(hilb_or_kummer_h2(slopes({{BigRat(1), 6}})) == slopes({{BigRat(1), 7}}));
    CHECK(hilb_or_kummer_h2(slopes({{BigRat(0), 1}, {BigRat(1), 20}, {BigRat(2), 1}})) ==
          slopes({{BigRat(0), 1}, {BigRat(1), 21}, {BigRat(2), 1}}));
    CHECK_THROWS_AS(hilb_or_kummer_h2(slopes({{BigRat(1), 5}})), domain_error);

    // The straight-line property transfers in both directions.
    std::mt19937_64 rng(0x48327631ull);
    for (int trial = 0; trial < 100; ++trial) {
        const Int rank = (trial % 2 == 0) ? 22 : 6;
        std::vector<std::pair<BigRat, Int>> raw;
        Int remaining = rank;
        while (remaining > 0) {
            Int mult = (rng() % 4 == 0) ? remaining : 1 + (Int)(rng() % remaining);
            raw.emplace_back(BigRat(1 + (Int)(rng() % 4), 1 + (Int)(rng() % 2)), mult);
            remaining -= mult;
        }
        auto s = make_slopes(raw);
        CHECK(is_supersingular(hilb_or_kummer_h2(s), 2) == is_supersingular(s, 2));
    }
}
