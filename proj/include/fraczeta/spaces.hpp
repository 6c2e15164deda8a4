#pragma once

#include "fraczeta/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fraczeta {

/// A point of a metric measure space.  The coordinate layout is owned by the
/// space that produced the point:
///   - Euclidean spaces: the Cartesian coordinates;
///   - Heisenberg group: {x, y, t};
///   - Laakso space: {height, letterCount, letter_1, ..., letter_n} with
///     letters in {1, 2} (branch choices, coarsest first);
///   - Laakso graph level: {edgeIndex, offsetAlongEdge};
///   - patchwork interval / square: the underlying unit-domain coordinates.
using Point = std::vector<double>;

/// A sampling region: a counter-based uniform sampler together with the total
/// measure it represents.  fraction-of-hits x measure estimates the measure
/// of any subregion.
struct SampleWindow {
    std::function<Point(std::uint64_t seed, std::uint64_t index)> sample;
    double measure = 0.0;
};

/// A metric measure space presented through oracles.  `distance` and `sample`
/// are mandatory; `ballMeasure` (the measure of the closed metric ball, in
/// the space itself rather than clipped to the sampling window) is present
/// only where a closed form or exact combinatorial computation exists.
///
/// Immutable after construction: all members are safe to call concurrently,
/// and `sample` is a pure function of (seed, index).
struct MMSpace {
    std::string name;
    double Q = 1.0;          ///< volume-scaling exponent used by zeta machinery
    double dimLower = 1.0;   ///< declared regularity exponent bounds: measure of
    double dimUpper = 1.0;   ///<   a ball scales like r^e with e in [dimLower, dimUpper]
    double diameter = 1.0;
    double totalMeasure = 1.0;  ///< measure carried by the sampling window

    std::function<double(const Point&, const Point&)> distance;
    std::function<Point(std::uint64_t seed, std::uint64_t index)> sample;
    std::function<double(const Point&, double)> ballMeasure;  ///< may be empty

    /// Radius range hint for regularity audits (0 = derive from diameter).
    double auditRadiusLo = 0.0;
    double auditRadiusHi = 0.0;

    /// Opaque handle keeping shared implementation state (e.g. the graph
    /// tables) alive; also used by set factories to reach internals.
    std::shared_ptr<const void> impl;
};

/// A subset of an ambient space presented through a distance-to-set oracle.
/// `windowFor(tMax)` (optional) returns a tight sampling region covering the
/// closed tMax-neighborhood of the set; estimators fall back to the space's
/// own window when it is absent.
struct PointSet {
    std::string name;
    std::function<double(const Point&)> distanceTo;
    std::function<SampleWindow(double)> windowFor;  ///< may be empty
};

// --------------------------------------------------------------------------
// Heisenberg group (first Heisenberg group, exponential coordinates {x,y,t})
// --------------------------------------------------------------------------

/// Group law (x,y,t)*(x',y',t') = (x+x', y+y', t+t'+2(x'y-xy')).
Point heisenberg_multiply(const Point& p, const Point& q);
Point heisenberg_inverse(const Point& p);

/// Homogeneous gauge ||(x,y,t)|| = ((x^2+y^2)^2 + t^2)^{1/4}.
double heisenberg_gauge(const Point& p);

/// Left-invariant gauge distance d(p,q) = ||p^{-1} q||.
double heisenberg_distance(const Point& p, const Point& q);

/// Anisotropic dilation (x,y,t) -> (c x, c y, c^2 t); scales the distance by c.
Point heisenberg_dilate(const Point& p, double c);

/// Exact measure of a gauge ball of radius r (Haar = Lebesgue): V1 * r^4.
double heisenberg_ball_measure(double r);

// --------------------------------------------------------------------------
// Laakso space (Cantor set of ratio 1/4 times unit interval, glued pairwise
// at wormhole heights)
// --------------------------------------------------------------------------

/// Height of the wormhole indexed by digits m = (m_1, ..., m_k):
/// sum m_i 4^{-i}.  Requires 0 <= m_i < 4 and m_k > 0 when k > 1; throws
/// std::domain_error otherwise.
double wormhole_height(const std::vector<int>& m);

/// Builds a Laakso point {h, letters.size(), letters...}; letters in {1,2}.
Point laakso_point(double h, const std::vector<int>& letters);

/// Shortest-path distance in the depth-n model of the Laakso space: branch
/// letters beyond order n do not exist and wormhole levels are materialized
/// to order n.  Addresses longer than `depth` throw std::domain_error, as do
/// letters outside {1,2} and heights outside [0,1].  Points whose addresses
/// differ only at orders where a wormhole sits at their common height
/// compare at distance zero (glued pairs).
double laakso_distance(const Point& x, const Point& y, int depth);

// --------------------------------------------------------------------------
// Patchwork spaces (unit domains glued from differently snowflaked patches;
// paths cross patch boundaries additively)
// --------------------------------------------------------------------------

/// Patchwork interval: [0, 1/4] carries the Euclidean metric to the power
/// 1/2, [1/4, 1] the Euclidean metric.  Exact geodesic distance.
double patchwork_interval_distance(double x, double y);

// --------------------------------------------------------------------------
// Functors and factories
// --------------------------------------------------------------------------

/// Snowflake functor: replaces d by d^p for p in (0, 1]; requires the base
/// diameter to be at most 1 (so d^p remains a metric bounded by 1) and
/// scales the regularity exponents by 1/p.  Throws std::domain_error for p
/// outside (0, 1] or an oversized base.
MMSpace snowflake(const MMSpace& base, double p);

/// Constructs a space from a JSON spec, e.g.
///   {"space":"euclid-interval"}         unit interval, Q = 1
///   {"space":"euclid-plane"}            sampling window around the unit square, Q = 2
///   {"space":"heisenberg"}              first Heisenberg group, Q = 4
///   {"space":"laakso-f","depth":8}      Laakso space, depth-n model, Q = 3/2
///   {"space":"laakso-graph","level":6}  Laakso graph level approximation, Q = 2
///   {"space":"patchwork-interval"}
///   {"space":"patchwork-square","metric":"linf"|"l1"}
///   {"space":"snowflake","p":0.5,"base":{...}}
/// Unknown names throw std::out_of_range listing the valid ones.
MMSpace make_space(const nlohmann::json& spec);

/// Constructs a named subset of `space` from a JSON spec, e.g.
///   {"set":"unit-segment"}      (euclid-plane)   [0,1] x {0}
///   {"set":"filled-square"}     (euclid-plane)   [0,1]^2
///   {"set":"quarter-cantor"}    (euclid-interval) Cantor set of ratio 1/4
///   {"set":"origin"}            (heisenberg)     the group identity
///   {"set":"t-axis-segment"}    (heisenberg)     {(0,0,t) : t in [0,1]}
///   {"set":"wormhole-point"}    (laakso-f)       glued pair at height 1/4
///   {"set":"cantor-fiber"}      (laakso-f)       full fiber over one address
///   {"set":"upper-geodesic"}    (laakso-graph)   arc [1/4,1/2] of the all-upper path
///   {"set":"sub-interval"}      (patchwork-interval) [1/8, 1/2]
///   {"set":"point","coords":[...]}, {"set":"box","lo":[...],"hi":[...]}
///                               (Euclidean spaces)
/// Unknown or incompatible names throw std::out_of_range listing valid ones.
PointSet make_set(const MMSpace& space, const nlohmann::json& spec);

/// Names accepted by make_space.
std::vector<std::string> space_names();

// --------------------------------------------------------------------------
// Regularity audit
// --------------------------------------------------------------------------

/// Result of sampling ball-measure scaling exponents.  Local exponents e(x)
/// are least-squares slopes of log mu(B(x,r)) against log r over a geometric
/// radius ladder; d1/d2 are their 5th/95th percentiles.  The verdict speaks
/// in the dimension-envelope convention: "upper-only" means the observed
/// exponents stay at or below the declared dimension but drop below it
/// (the declared value bounds the local dimension from above only), and
/// "lower-only" is the mirror image.  kLower = min mu(B)/r^dimUpper and
/// kUpper = max mu(B)/r^dimLower over all sampled balls, so for a regular
/// space both ratios stay within a bounded factor of 1.
struct AuditReport {
    double d1 = 0.0;
    double d2 = 0.0;
    double kLower = 0.0;
    double kUpper = 0.0;
    std::string verdict;  ///< "regular", "upper-only", "lower-only", "type(a,b)"
    int centers = 0;
    double radiusLo = 0.0;
    double radiusHi = 0.0;
};

/// Samples `nBalls` ball measures (centers drawn from the space's measure,
/// a fixed geometric ladder of radii per center) and classifies the space
/// against its declared regularity exponents.  Uses the exact ballMeasure
/// oracle when present, otherwise estimates ball measures by sampling.
/// Requires nBalls >= 100.
AuditReport regularity_audit(const MMSpace& space, int nBalls, std::uint64_t seed);

void to_json(nlohmann::json& j, const AuditReport& r);

} // namespace fraczeta
