#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraczeta/catalog.hpp"
#include "fraczeta/graph.hpp"
#include "fraczeta/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

using namespace fraczeta;
using nlohmann::json;

namespace {

Point rand_point(const MMSpace& s, std::mt19937_64& rng) {
    return s.sample(rng(), rng());
}

/// Symmetry, identity, nonnegativity, and the triangle inequality on random
/// triples drawn from the space's own sampler.
void check_metric_axioms(const MMSpace& s, int nTriples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < nTriples; ++i) {
        const Point a = rand_point(s, rng);
        const Point b = rand_point(s, rng);
        const Point c = rand_point(s, rng);
        const double ab = s.distance(a, b);
        const double ba = s.distance(b, a);
        const double bc = s.distance(b, c);
        const double ac = s.distance(a, c);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);  // symmetry must be exact
        CHECK(s.distance(a, a) == 0.0);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ab <= s.diameter + 1e-9);
    }
}

/// The sampler must reproduce the measure of a known region: fraction of
/// hits x totalMeasure within 3 binomial sigma.
void check_region_fraction(const MMSpace& s, double expectedFraction,
                           const std::function<bool(const Point&)>& inRegion,
                           int n = 1000000, std::uint64_t seed = 12345) {
    long hits = 0;
    for (int i = 0; i < n; ++i) hits += inRegion(s.sample(seed, (std::uint64_t)i));
    const double p = (double)hits / n;
    const double sigma = std::sqrt(expectedFraction * (1.0 - expectedFraction) / n);
    CHECK(std::abs(p - expectedFraction) <= 3.0 * sigma + 1e-12);
}

} // namespace

// ==========================================================================
// Heisenberg group
// ==========================================================================

TEST_CASE("heisenberg gauge distance reference values") {
    const Point o = {0.0, 0.0, 0.0};
    CHECK(heisenberg_distance(o, {0.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(heisenberg_distance(o, {1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(heisenberg_distance(o, o) == 0.0);
    // Gauge of a generic point.
    const Point p = {0.3, -0.4, 0.2};
    const double rho2 = 0.3 * 0.3 + 0.4 * 0.4;
    CHECK(heisenberg_gauge(p) ==
          doctest::Approx(std::pow(rho2 * rho2 + 0.04, 0.25)).epsilon(1e-14));
    CHECK_THROWS_AS(heisenberg_gauge({1.0, 2.0}), std::domain_error);
}

TEST_CASE("heisenberg distance is left invariant") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const Point g = {u(rng), u(rng), u(rng)};
        const Point p = {u(rng), u(rng), u(rng)};
        const Point q = {u(rng), u(rng), u(rng)};
        const double d0 = heisenberg_distance(p, q);
        const double d1 = heisenberg_distance(heisenberg_multiply(g, p),
                                              heisenberg_multiply(g, q));
        CHECK(std::abs(d0 - d1) <= 1e-12 * (1.0 + d0));
    }
}

TEST_CASE("heisenberg dilation scales the gauge distance") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> cs(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        const Point p = {u(rng), u(rng), u(rng)};
        const Point q = {u(rng), u(rng), u(rng)};
        const double c = cs(rng);
        const double d0 = heisenberg_distance(p, q);
        const double d1 = heisenberg_distance(heisenberg_dilate(p, c), heisenberg_dilate(q, c));
        CHECK(std::abs(d1 - c * d0) <= 1e-12 * (1.0 + c * d0));
    }
}

TEST_CASE("heisenberg group axioms") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const Point p = {u(rng), u(rng), u(rng)};
        const Point q = {u(rng), u(rng), u(rng)};
        const Point r = {u(rng), u(rng), u(rng)};
        const Point lhs = heisenberg_multiply(heisenberg_multiply(p, q), r);
        const Point rhs = heisenberg_multiply(p, heisenberg_multiply(q, r));
        for (int k = 0; k < 3; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
        const Point e = heisenberg_multiply(p, heisenberg_inverse(p));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(e[k]) <= 1e-12);
    }
}

TEST_CASE("heisenberg ball measure r^4 V1") {
    const double V1 = heisenberg_unit_ball_volume();
    CHECK(heisenberg_ball_measure(1.0) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-9));
    CHECK(heisenberg_ball_measure(2.0) == doctest::Approx(16.0 * V1).epsilon(1e-14));
    CHECK(heisenberg_ball_measure(0.0) == 0.0);
    CHECK_THROWS_AS(heisenberg_ball_measure(-1.0), std::domain_error);
}

TEST_CASE("heisenberg set distances match brute-force minimization") {
    const MMSpace h = make_space("heisenberg");
    const PointSet seg = make_set(h, "t-axis-segment");
    const PointSet org = make_set(h, "origin");
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ut(-1.0, 2.0);
    for (int i = 0; i < 25; ++i) {
        const Point p = {u(rng), u(rng), ut(rng)};
        // Dense scan over the axis parameter as an independent oracle.
        double best = 1e300;
        for (int k = 0; k <= 20000; ++k) {
            const double s = (double)k / 20000.0;
            best = std::min(best, heisenberg_distance(p, {0.0, 0.0, s}));
        }
        CHECK(seg.distanceTo(p) == doctest::Approx(best).epsilon(1e-6));
        CHECK(org.distanceTo(p) == doctest::Approx(heisenberg_distance(p, {0, 0, 0})).epsilon(1e-14));
    }
    // The tight sampling windows match their advertised measures.
    CHECK(seg.windowFor(0.1).measure == doctest::Approx(4.0 * 0.01 * 1.02).epsilon(1e-14));
    CHECK(org.windowFor(0.5).measure == doctest::Approx(8.0 * std::pow(0.5, 4)).epsilon(1e-14));
}

// ==========================================================================
// Laakso space
// ==========================================================================

TEST_CASE("wormhole heights") {
    CHECK(wormhole_height({1}) == 0.25);
    CHECK(wormhole_height({0}) == 0.0);
    CHECK(wormhole_height({2}) == 0.5);
    CHECK(wormhole_height({3}) == 0.75);
    CHECK(wormhole_height({1, 2}) == 0.375);
    CHECK(wormhole_height({0, 1}) == 0.0625);
    CHECK_THROWS_AS(wormhole_height({}), std::domain_error);
    CHECK_THROWS_AS(wormhole_height({4}), std::domain_error);
    CHECK_THROWS_AS(wormhole_height({-1}), std::domain_error);
    CHECK_THROWS_AS(wormhole_height({1, 0}), std::domain_error);
}

TEST_CASE("laakso distance reference values") {
    const int depth = 8;
    const std::vector<int> ones(depth, 1);
    std::vector<int> flip1 = ones;
    flip1[0] = 2;

    // Same branch: pure height difference.
    CHECK(laakso_distance(laakso_point(0.2, ones), laakso_point(0.7, ones), depth) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // Glued pair at a first-order wormhole height: distance zero.
    CHECK(laakso_distance(laakso_point(0.25, ones), laakso_point(0.25, flip1), depth) == 0.0);
    // First-letter flip at height 0.3: nearest order-1 wormhole is at 1/4,
    // so the walk detours down by 0.05 and back.
    CHECK(laakso_distance(laakso_point(0.3, ones), laakso_point(0.3, flip1), depth) ==
          doctest::Approx(0.1).epsilon(1e-12));
    // Height 0 is itself an order-1 wormhole.
    CHECK(laakso_distance(laakso_point(0.0, ones), laakso_point(0.0, flip1), depth) == 0.0);
    // Symmetric pair across a deeper letter: order-2 wormholes are spaced
    // 4^{-2} apart away from multiples of 1/4.
    std::vector<int> flip2 = ones;
    flip2[1] = 2;
    const double d2 = laakso_distance(laakso_point(0.2, ones), laakso_point(0.2, flip2), depth);
    // Order-2 wormholes near 0.2: 3/16 below (gap 0.0125), above 5/16 (gap 0.1125).
    CHECK(d2 == doctest::Approx(0.025).epsilon(1e-12));
}

TEST_CASE("laakso distance validation") {
    const int depth = 4;
    const std::vector<int> a(depth, 1);
    CHECK_THROWS_AS(laakso_distance(laakso_point(0.5, std::vector<int>(5, 1)),
                                    laakso_point(0.5, a), depth),
                    std::domain_error);
    CHECK_THROWS_AS(laakso_distance(laakso_point(1.5, a), laakso_point(0.5, a), depth),
                    std::domain_error);
    CHECK_THROWS_AS(laakso_distance(laakso_point(0.5, {1, 3, 1, 1}), laakso_point(0.5, a), depth),
                    std::domain_error);
    CHECK_THROWS_AS(laakso_distance({0.5}, laakso_point(0.5, a), depth), std::domain_error);
    CHECK_THROWS_AS(laakso_distance(laakso_point(0.5, a), laakso_point(0.5, a), 30),
                    std::domain_error);
}

TEST_CASE("laakso depth refinement changes distances by at most 4^-n") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<int> la(n + 1), lb(n + 1);
            for (int i = 0; i <= n; ++i) {
                la[i] = 1 + (int)(rng() & 1);
                lb[i] = 1 + (int)(rng() & 1);
            }
            const double ha = u(rng), hb = u(rng);
            const double dFine = laakso_distance(laakso_point(ha, la), laakso_point(hb, lb), n + 1);
            la.resize(n);
            lb.resize(n);
            const double dCoarse = laakso_distance(laakso_point(ha, la), laakso_point(hb, lb), n);
            CHECK(std::abs(dFine - dCoarse) <= std::pow(4.0, -n) + 1e-15);
        }
    }
}

TEST_CASE("laakso-f sets") {
    const MMSpace f = make_space(json{{"space", "laakso-f"}, {"depth", 8}});
    const PointSet wp = make_set(f, "wormhole-point");
    const PointSet fiber = make_set(f, "cantor-fiber");
    const std::vector<int> ones(8, 1);
    std::vector<int> flip1 = ones;
    flip1[0] = 2;

    // Both glued representatives sit at distance zero.
    CHECK(wp.distanceTo(laakso_point(0.25, ones)) == 0.0);
    CHECK(wp.distanceTo(laakso_point(0.25, flip1)) == 0.0);
    // Same fiber, higher up.
    CHECK(wp.distanceTo(laakso_point(0.5, ones)) == doctest::Approx(0.25).epsilon(1e-12));

    // Points over the all-1 address lie on the set exactly when the height
    // belongs to the quarter-Cantor set.
    CHECK(fiber.distanceTo(laakso_point(0.75, ones)) == 0.0);
    CHECK(fiber.distanceTo(laakso_point(3.0 / 16.0, ones)) == 0.0);
    // Height 0.9 on the all-1 address: walk straight down to the nearest
    // Cantor height, 0.9 - (0.75 + 0.25 * 0.6) = 0.0375.
    CHECK(fiber.distanceTo(laakso_point(0.9, ones)) ==
          doctest::Approx(0.0375).epsilon(1e-12));
    // All letters flipped at height 0.3: optimal walk goes up to the order-2
    // wormhole at 5/16, then down to the Cantor height 1/4 (fixing the other
    // orders on the way), costing 0.0125 + 0.0625.
    CHECK(fiber.distanceTo(laakso_point(0.3, std::vector<int>(8, 2))) ==
          doctest::Approx(0.075).epsilon(1e-12));
}

TEST_CASE("laakso-f metric axioms and sampler") {
    const MMSpace f = make_space("laakso-f");
    check_metric_axioms(f, 1000, 21);
    check_region_fraction(f, 0.5, [](const Point& p) { return p[0] <= 0.5; });
}

// ==========================================================================
// Laakso graph levels
// ==========================================================================

TEST_CASE("laakso graph structure") {
    for (int lvl = 0; lvl <= 4; ++lvl) {
        const auto g = build_laakso_graph(lvl);
        CHECK((int)g->edges.size() == (int)std::pow(4, lvl));
        const int expectVerts = lvl == 0 ? 2 : 2 + 2 * ((int)std::pow(4, lvl) - 1) / 3;
        CHECK(g->vertexCount == expectVerts);
        // Ends sit at unit distance at every level.
        int srcEdge = -1, snkEdge = -1;
        double srcOff = 0, snkOff = 0;
        for (int i = 0; i < (int)g->edges.size(); ++i) {
            if (g->edges[i].u == g->sourceVertex) { srcEdge = i; srcOff = 0.0; }
            if (g->edges[i].v == g->sinkVertex) { snkEdge = i; snkOff = g->edges[i].len; }
        }
        REQUIRE(srcEdge >= 0);
        REQUIRE(snkEdge >= 0);
        CHECK(g->distance(srcEdge, srcOff, snkEdge, snkOff) == doctest::Approx(1.0).epsilon(1e-12));
        // Total measure is one: 4^lvl edges of measure 4^-lvl each.
        CHECK(g->edgeMeasure * (double)g->edges.size() == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK((int)build_laakso_graph(6)->vertexCount == 2732);
    CHECK_THROWS_AS(build_laakso_graph(-1), std::domain_error);
    CHECK_THROWS_AS(build_laakso_graph(11), std::domain_error);
}

TEST_CASE("laakso graph level 1 is two arcs over a split middle") {
    const auto g = build_laakso_graph(1);
    REQUIRE((int)g->edges.size() == 4);
    // One parallel branch carries measure 1/4 = its edge measure.
    int upper = -1;
    for (int i = 0; i < 4; ++i)
        if (g->edges[i].onUpperPath) upper = i;
    REQUIRE(upper >= 0);
    CHECK(g->edgeMeasure == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g->edges[upper].len == doctest::Approx(0.5).epsilon(1e-14));
    // The two parallel middles are at distance 1/2 between their midpoints
    // going around through either junction.
    int lower = -1;
    for (int i = 0; i < 4; ++i)
        if (g->edges[i].len == 0.5 && i != upper) lower = i;
    REQUIRE(lower >= 0);
    CHECK(g->distance(upper, 0.25, lower, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g->distance(upper, 0.0, lower, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("laakso graph ball measures agree with grid integration") {
    const auto g = build_laakso_graph(3);
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 3; ++rep) {
        const int e = (int)(rng() % g->edges.size());
        const double off = g->edges[e].len * 0.5;
        for (double r : {0.1, 0.3}) {
            const double exact = g->ballMeasures(e, off, {r})[0];
            // Independent Riemann sum over all edges.
            double approx = 0.0;
            const int grid = 256;
            for (int f = 0; f < (int)g->edges.size(); ++f) {
                const double len = g->edges[f].len;
                int hits = 0;
                for (int k = 0; k < grid; ++k) {
                    const double t = len * (k + 0.5) / grid;
                    hits += (g->distance(e, off, f, t) <= r);
                }
                approx += g->edgeMeasure * (double)hits / grid;
            }
            CHECK(exact == doctest::Approx(approx).epsilon(0.02));
        }
    }
}

TEST_CASE("laakso graph upper geodesic arc distances") {
    for (int lvl = 1; lvl <= 4; ++lvl) {
        const auto g = build_laakso_graph(lvl);
        // Source vertex sits 1/4 before the branch point where the arc starts.
        int srcEdge = -1;
        for (int i = 0; i < (int)g->edges.size(); ++i)
            if (g->edges[i].u == g->sourceVertex) srcEdge = i;
        REQUIRE(srcEdge >= 0);
        CHECK(g->distanceToUpperArc(srcEdge, 0.0, 0.0, 0.25) ==
              doctest::Approx(0.25).epsilon(1e-12));
        // Sink is 1/4 (tail) + 1/4 (other half of the branch) from the arc end.
        int snkEdge = -1;
        for (int i = 0; i < (int)g->edges.size(); ++i)
            if (g->edges[i].v == g->sinkVertex) snkEdge = i;
        REQUIRE(snkEdge >= 0);
        CHECK(g->distanceToUpperArc(snkEdge, g->edges[snkEdge].len, 0.0, 0.25) ==
              doctest::Approx(0.5).epsilon(1e-12));
        // Points on the arc itself are at distance zero.
        for (int i = 0; i < (int)g->edges.size(); ++i) {
            const auto& ed = g->edges[i];
            if (!ed.onUpperPath) continue;
            if (ed.arcLo >= 0.05 && ed.arcLo + ed.len <= 0.2) {
                CHECK(g->distanceToUpperArc(i, ed.len / 2, 0.0, 0.25) ==
                      doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("laakso graph space: axioms, sampler, set") {
    const MMSpace gs = make_space(json{{"space", "laakso-graph"}, {"level", 4}});
    check_metric_axioms(gs, 300, 41);
    check_region_fraction(gs, 0.5, [&](const Point& p) {
        const auto g = std::static_pointer_cast<const LaaksoGraphLevel>(gs.impl);
        return p[1] <= g->edges[(int)p[0]].len / 2.0;
    }, 200000);
    check_region_fraction(gs, std::pow(0.25, 4), [](const Point& p) { return p[0] == 0.0; },
                          1000000);
    const PointSet arc = make_set(gs, "upper-geodesic");
    CHECK(arc.distanceTo({0.0, 0.0}) >= 0.0);
    CHECK_THROWS_AS(arc.distanceTo({1e9, 0.0}), std::domain_error);
}

// ==========================================================================
// Patchwork interval and square
// ==========================================================================

TEST_CASE("patchwork interval reference distances") {
    CHECK(patchwork_interval_distance(0.0, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(patchwork_interval_distance(0.25, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(patchwork_interval_distance(0.0, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(patchwork_interval_distance(0.5, 0.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(patchwork_interval_distance(0.1, 0.1) == 0.0);
    CHECK_THROWS_AS(patchwork_interval_distance(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(patchwork_interval_distance(0.1, 1.5), std::domain_error);
}

TEST_CASE("patchwork interval ball measure matches scan integration") {
    const MMSpace s = make_space("patchwork-interval");
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_real_distribution<double> ur(0.01, 0.6);
    const int grid = 200000;
    for (int rep = 0; rep < 20; ++rep) {
        const double x = ux(rng), r = ur(rng);
        const double exact = s.ballMeasure({x}, r);
        int hits = 0;
        for (int k = 0; k < grid; ++k) {
            const double y = (k + 0.5) / grid;
            hits += (patchwork_interval_distance(x, y) <= r);
        }
        CHECK(exact == doctest::Approx((double)hits / grid).epsilon(1e-3));
    }
    CHECK(s.diameter == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("patchwork interval axioms, sampler, sub-interval set") {
    const MMSpace s = make_space("patchwork-interval");
    check_metric_axioms(s, 1000, 52);
    check_region_fraction(s, 0.25, [](const Point& p) { return p[0] <= 0.25; });
    const PointSet sub = make_set(s, "sub-interval");
    CHECK(sub.distanceTo({0.25}) == 0.0);
    CHECK(sub.distanceTo({0.0}) == doctest::Approx(std::sqrt(0.125)).epsilon(1e-14));
    CHECK(sub.distanceTo({0.75}) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("patchwork square reference distances") {
    const MMSpace s = make_space(json{{"space", "patchwork-square"}, {"metric", "linf"}});
    // Within the bottom-left quadrant: cube root of the sup norm.
    CHECK(s.distance({0.1, 0.1}, {0.2, 0.1}) == doctest::Approx(std::cbrt(0.1)).epsilon(1e-12));
    // Within the top-right quadrant: plain sup norm.
    CHECK(s.distance({0.6, 0.6}, {0.9, 0.8}) == doctest::Approx(0.3).epsilon(1e-12));
    // Bottom-left to top-right through the center station, exactly.
    CHECK(s.distance({0.25, 0.25}, {0.75, 0.75}) ==
          doctest::Approx(std::cbrt(0.25) + 0.25).epsilon(1e-12));
    // A point on the shared arm takes the cheaper of the two adjacent patches
    // (for separations below 1, the square root beats the cube root).
    CHECK(s.distance({0.5, 0.25}, {0.5, 0.35}) == doctest::Approx(std::sqrt(0.1)).epsilon(1e-12));
    CHECK_THROWS_AS(s.distance({1.2, 0.0}, {0.5, 0.5}), std::domain_error);

    const MMSpace s1 = make_space(json{{"space", "patchwork-square"}, {"metric", "l1"}});
    CHECK(s1.distance({0.6, 0.6}, {0.9, 0.8}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s1.distance({0.1, 0.1}, {0.2, 0.1}) == doctest::Approx(std::cbrt(0.1)).epsilon(1e-12));
}

TEST_CASE("patchwork square axioms and sampler") {
    const MMSpace s = make_space("patchwork-square");
    check_metric_axioms(s, 400, 53);
    check_region_fraction(s, 0.25,
                          [](const Point& p) { return p[0] <= 0.5 && p[1] <= 0.5; }, 200000);
}

// ==========================================================================
// Snowflake functor
// ==========================================================================

TEST_CASE("snowflake guards and identity") {
    const MMSpace base = make_space("euclid-interval");
    CHECK_THROWS_AS(snowflake(base, 0.0), std::domain_error);
    CHECK_THROWS_AS(snowflake(base, 1.5), std::domain_error);
    CHECK_THROWS_AS(snowflake(make_space("euclid-plane"), 0.5), std::domain_error);

    const MMSpace same = snowflake(base, 1.0);
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        const Point a = rand_point(base, rng), b = rand_point(base, rng);
        CHECK(same.distance(a, b) == doctest::Approx(base.distance(a, b)).epsilon(1e-14));
    }
    CHECK(same.Q == base.Q);
}

TEST_CASE("snowflaked interval is 2-regular") {
    const MMSpace s = snowflake(make_space("euclid-interval"), 0.5);
    CHECK(s.Q == doctest::Approx(2.0));
    CHECK(s.distance({0.0}, {0.25}) == doctest::Approx(0.5).epsilon(1e-14));
    check_metric_axioms(s, 1000, 62);
    const AuditReport rep = regularity_audit(s, 1200, 63);
    CHECK(rep.verdict == "regular");
    CHECK(rep.d1 >= 1.6);  // endpoint truncation flattens the low percentile
    CHECK(rep.d1 <= 2.04);
    CHECK(rep.d2 == doctest::Approx(2.0).epsilon(0.05));
    // JSON spec form builds the same space.
    const MMSpace viaJson = make_space(json{
        {"space", "snowflake"}, {"p", 0.5}, {"base", "euclid-interval"}});
    CHECK(viaJson.distance({0.0}, {0.25}) == doctest::Approx(0.5).epsilon(1e-14));
}

// ==========================================================================
// Euclidean spaces and generic sets
// ==========================================================================

TEST_CASE("euclidean spaces: axioms, samplers, sets") {
    const MMSpace line = make_space("euclid-interval");
    check_metric_axioms(line, 1000, 71);
    check_region_fraction(line, 0.5, [](const Point& p) { return p[0] <= 0.5; });

    const MMSpace plane = make_space("euclid-plane");
    check_metric_axioms(plane, 1000, 72);
    check_region_fraction(plane, 0.25, [](const Point& p) {
        return p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
    });

    const MMSpace h = make_space("heisenberg");
    check_metric_axioms(h, 1000, 73);
    check_region_fraction(h, 0.5, [](const Point& p) { return p[0] > 0.0; });

    const PointSet seg = make_set(plane, "unit-segment");
    CHECK(seg.distanceTo({0.5, 0.25}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(seg.distanceTo({-0.3, -0.4}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(seg.distanceTo({1.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(seg.windowFor(0.1).measure == doctest::Approx(1.2 * 0.2).epsilon(1e-14));

    const PointSet sq = make_set(plane, "filled-square");
    CHECK(sq.distanceTo({0.5, 0.5}) == 0.0);
    CHECK(sq.distanceTo({1.3, 1.4}) == doctest::Approx(0.5).epsilon(1e-14));

    const PointSet pt = make_set(plane, json{{"set", "point"}, {"coords", {0.25, 0.5}}});
    CHECK(pt.distanceTo({0.25, 0.75}) == doctest::Approx(0.25).epsilon(1e-14));

    const PointSet bx = make_set(line, json{{"set", "box"}, {"lo", {0.25}}, {"hi", {0.5}}});
    CHECK(bx.distanceTo({0.1}) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(bx.distanceTo({0.3}) == 0.0);
}

TEST_CASE("quarter cantor distance oracle") {
    const MMSpace line = make_space("euclid-interval");
    const PointSet c = make_set(line, "quarter-cantor");
    // Points of the set at every level.
    for (double x : {0.0, 1.0, 0.25, 0.75, 0.0625, 0.8125}) {
        CAPTURE(x);
        CHECK(c.distanceTo({x}) <= 1e-15);
    }
    // Gap midpoints: the central gap reaches distance 1/4 at its center.
    CHECK(c.distanceTo({0.5}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c.distanceTo({0.125}) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(c.distanceTo({-0.5}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.distanceTo({1.25}) == doctest::Approx(0.25).epsilon(1e-14));
    // Independent oracle: distance to the depth-9 interval endpoints of the
    // recursive construction.
    std::vector<double> pts;
    std::function<void(double, double, int)> gen = [&](double lo, double len, int depth) {
        if (depth == 0) {
            pts.push_back(lo);
            pts.push_back(lo + len);
            return;
        }
        gen(lo, len / 4.0, depth - 1);
        gen(lo + 3.0 * len / 4.0, len / 4.0, depth - 1);
    };
    gen(0.0, 1.0, 9);
    std::sort(pts.begin(), pts.end());
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        double best = 1e300;
        for (double p : pts) best = std::min(best, std::abs(x - p));
        CHECK(c.distanceTo({x}) == doctest::Approx(best).epsilon(1e-9));
    }
}

// ==========================================================================
// Factory error handling
// ==========================================================================

TEST_CASE("factories reject unknown names with a listing") {
    CHECK_THROWS_AS(make_space("no-such-space"), std::out_of_range);
    try {
        make_space("no-such-space");
    } catch (const std::out_of_range& e) {
        CHECK(std::string(e.what()).find("euclid-interval") != std::string::npos);
    }
    const MMSpace plane = make_space("euclid-plane");
    CHECK_THROWS_AS(make_set(plane, "no-such-set"), std::out_of_range);
    CHECK_THROWS_AS(make_set(plane, "origin"), std::out_of_range);  // wrong space
    CHECK_THROWS_AS(make_set(make_space("heisenberg"), "unit-segment"), std::out_of_range);
    CHECK_THROWS_AS(make_space(json{{"space", "patchwork-square"}, {"metric", "l7"}}),
                    std::domain_error);
    CHECK(space_names().size() == 8);
}

// ==========================================================================
// Regularity audit
// ==========================================================================

TEST_CASE("audit: euclid interval is regular with constants near 1") {
    const AuditReport rep = regularity_audit(make_space("euclid-interval"), 1200, 91);
    CHECK(rep.verdict == "regular");
    // Balls near the endpoints are truncated, which flattens the lowest
    // observed slopes a little; they stay within the verdict tolerance.
    CHECK(rep.d1 >= 0.8);
    CHECK(rep.d1 <= 1.02);
    CHECK(rep.d2 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(rep.kUpper <= 4.0);
    CHECK(rep.kLower >= 0.25);
    CHECK_THROWS_AS(regularity_audit(make_space("euclid-interval"), 50, 91),
                    std::invalid_argument);
}

TEST_CASE("audit: heisenberg and plane are regular") {
    CHECK(regularity_audit(make_space("heisenberg"), 600, 92).verdict == "regular");
    CHECK(regularity_audit(make_space("euclid-plane"), 600, 92).verdict == "regular");
}

TEST_CASE("audit: patchwork interval shows its exponent range") {
    const AuditReport rep = regularity_audit(make_space("patchwork-interval"), 1200, 93);
    CHECK(rep.verdict == "type(1,2)");
    CHECK(rep.d1 == doctest::Approx(1.0).epsilon(0.15));
    CHECK(rep.d2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("audit: graph level carries at most its declared exponent") {
    const MMSpace gs = make_space(json{{"space", "laakso-graph"}, {"level", 6}});
    const AuditReport rep = regularity_audit(gs, 600, 94);
    CHECK(rep.verdict == "upper-only");
    CHECK(rep.d2 <= 2.25);
    nlohmann::json j = rep;
    CHECK(j.at("verdict") == "upper-only");
    CHECK(j.at("centers").get<int>() >= 50);
}
