#include "fraczeta/spaces.hpp"

#include "fraczeta/catalog.hpp"
#include "fraczeta/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fraczeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

// ==========================================================================
// Heisenberg group
// ==========================================================================

namespace {
void check_h_point(const Point& p) {
    if (p.size() != 3)
        throw std::domain_error("Heisenberg points are {x, y, t}");
}
} // namespace

Point heisenberg_multiply(const Point& p, const Point& q) {
    check_h_point(p);
    check_h_point(q);
    return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + 2.0 * (q[0] * p[1] - p[0] * q[1])};
}

Point heisenberg_inverse(const Point& p) {
    check_h_point(p);
    return {-p[0], -p[1], -p[2]};
}

double heisenberg_gauge(const Point& p) {
    check_h_point(p);
    const double rho2 = p[0] * p[0] + p[1] * p[1];
    return std::pow(rho2 * rho2 + p[2] * p[2], 0.25);
}

double heisenberg_distance(const Point& p, const Point& q) {
    return heisenberg_gauge(heisenberg_multiply(heisenberg_inverse(p), q));
}

Point heisenberg_dilate(const Point& p, double c) {
    check_h_point(p);
    return {c * p[0], c * p[1], c * c * p[2]};
}

double heisenberg_ball_measure(double r) {
    if (!(r >= 0.0)) throw std::domain_error("ball radius must be nonnegative");
    const double r2 = r * r;
    return heisenberg_unit_ball_volume() * r2 * r2;
}

// ==========================================================================
// Laakso space
// ==========================================================================

double wormhole_height(const std::vector<int>& m) {
    if (m.empty()) throw std::domain_error("wormhole index must have at least one digit");
    const int k = (int)m.size();
    double h = 0.0, scale = 1.0;
    for (int i = 0; i < k; ++i) {
        if (m[i] < 0 || m[i] >= 4)
            throw std::domain_error("wormhole digits must lie in [0, 4), got " + std::to_string(m[i]));
        scale *= 0.25;
        h += m[i] * scale;
    }
    if (k > 1 && m[k - 1] == 0)
        throw std::domain_error("trailing wormhole digit must be nonzero for order > 1");
    return h;
}

Point laakso_point(double h, const std::vector<int>& letters) {
    Point p;
    p.reserve(2 + letters.size());
    p.push_back(h);
    p.push_back((double)letters.size());
    for (int a : letters) p.push_back((double)a);
    return p;
}

namespace {

constexpr int kMaxLaaksoDepth = 24;  // 4^24 fits exactly in a double mantissa

struct LaaksoAddr {
    double h = 0.0;
    const double* letters = nullptr;
    int n = 0;
};

LaaksoAddr parse_laakso(const Point& p, int depth) {
    if (p.size() < 2)
        throw std::domain_error("Laakso points are {height, letterCount, letters...}");
    LaaksoAddr a;
    a.h = p[0];
    if (!(a.h >= 0.0 && a.h <= 1.0))
        throw std::domain_error("Laakso height must lie in [0, 1], got " + std::to_string(a.h));
    a.n = (int)p[1];
    if (a.n < 0 || (int)p.size() != 2 + a.n)
        throw std::domain_error("Laakso point letter count does not match its length");
    if (a.n > depth)
        throw std::domain_error("Laakso address of length " + std::to_string(a.n) +
                                " exceeds the model depth " + std::to_string(depth));
    a.letters = p.data() + 2;
    for (int i = 0; i < a.n; ++i)
        if (p[2 + i] != 1.0 && p[2 + i] != 2.0)
            throw std::domain_error("Laakso branch letters must be 1 or 2");
    return a;
}

// Wormhole heights of order j: j = 1 gives {0, 1/4, 1/2, 3/4}; j >= 2 gives
// q * 4^{-j} for 1 <= q < 4^j with q not a multiple of 4 (multiples of 4
// belong to shallower orders).

double order_below_gap(int j, double lo) {
    if (j == 1) {
        long q = (long)std::floor(lo * 4.0);
        if (q > 3) q = 3;
        while (q >= 0 && q / 4.0 > lo) --q;
        if (q < 0) return kInf;
        return lo - q / 4.0;
    }
    const double S = std::pow(4.0, j);
    long q = (long)std::floor(lo * S);
    if (q > (long)S - 1) q = (long)S - 1;
    while (q >= 1 && (q % 4 == 0 || q / S > lo)) --q;
    if (q < 1) return kInf;
    return lo - q / S;
}

double order_above_gap(int j, double hi) {
    if (j == 1) {
        long q = (long)std::ceil(hi * 4.0);
        if (q < 0) q = 0;
        while (q <= 3 && q / 4.0 < hi) ++q;
        if (q > 3) return kInf;
        return q / 4.0 - hi;
    }
    const double S = std::pow(4.0, j);
    long q = (long)std::ceil(hi * S);
    if (q < 1) q = 1;
    while (q <= (long)S - 1 && (q % 4 == 0 || q / S < hi)) ++q;
    if (q > (long)S - 1) return kInf;
    return q / S - hi;
}

/// Cheapest vertical travel that starts at h, ends at a, and visits one
/// wormhole of each order in `orders`.  A geodesic goes down to the lowest
/// needed height, up to the highest, and ends at the target, so the cost is
/// |h - a| plus twice the below-extension plus twice the above-extension;
/// orders whose nearest wormhole already sits inside [min, max] are free,
/// and each remaining order is sent to whichever side minimizes the pair of
/// maxima (enumerating the below-extension candidates is exact).
double traversal_cost(const std::vector<int>& orders, double h, double a) {
    const double lo = std::min(h, a), hi = std::max(h, a);
    std::vector<std::pair<double, double>> need;  // (belowGap, aboveGap)
    for (int j : orders) {
        const double inGap = order_above_gap(j, lo);
        if (inGap <= hi - lo) continue;  // a wormhole of this order sits inside [lo, hi]
        need.push_back({order_below_gap(j, lo), order_above_gap(j, hi)});
    }
    if (need.empty()) return hi - lo;
    std::vector<double> cands = {0.0};
    for (const auto& nb : need)
        if (std::isfinite(nb.first)) cands.push_back(nb.first);
    double best = kInf;
    for (double below : cands) {
        double above = 0.0;
        bool feasible = true;
        for (const auto& nb : need) {
            if (nb.first <= below) continue;  // reachable within the below-extension
            if (!std::isfinite(nb.second)) {
                feasible = false;
                break;
            }
            above = std::max(above, nb.second);
        }
        if (feasible) best = std::min(best, 2.0 * below + 2.0 * above);
    }
    return (hi - lo) + best;
}

/// Same, but the endpoint is free (distance from a point to a full fiber):
/// the walk spans [h - B, h + A] and the cheaper extreme is visited first,
/// costing B + A + min(A, B).
double traversal_cost_free_end(const std::vector<int>& orders, double h) {
    std::vector<std::pair<double, double>> need;
    for (int j : orders) {
        const double below = order_below_gap(j, h);
        const double above = order_above_gap(j, h);
        if (below == 0.0 || above == 0.0) continue;  // wormhole at h itself
        need.push_back({below, above});
    }
    if (need.empty()) return 0.0;
    std::vector<double> cands = {0.0};
    for (const auto& nb : need)
        if (std::isfinite(nb.first)) cands.push_back(nb.first);
    double best = kInf;
    for (double below : cands) {
        double above = 0.0;
        bool feasible = true;
        for (const auto& nb : need) {
            if (nb.first <= below) continue;
            if (!std::isfinite(nb.second)) {
                feasible = false;
                break;
            }
            above = std::max(above, nb.second);
        }
        if (feasible) best = std::min(best, below + above + std::min(below, above));
    }
    return best;
}

std::vector<int> differing_orders(const LaaksoAddr& x, const LaaksoAddr& y) {
    std::vector<int> orders;
    const int n = std::min(x.n, y.n);
    for (int i = 0; i < n; ++i)
        if (x.letters[i] != y.letters[i]) orders.push_back(i + 1);
    return orders;
}

struct LaaksoParams {
    int depth = 8;
};

} // namespace

double laakso_distance(const Point& x, const Point& y, int depth) {
    if (depth < 1 || depth > kMaxLaaksoDepth)
        throw std::domain_error("Laakso model depth must lie in [1, " +
                                std::to_string(kMaxLaaksoDepth) + "]");
    const LaaksoAddr a = parse_laakso(x, depth);
    const LaaksoAddr b = parse_laakso(y, depth);
    return traversal_cost(differing_orders(a, b), a.h, b.h);
}

// ==========================================================================
// Patchwork interval
// ==========================================================================

namespace {
void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}
} // namespace

double patchwork_interval_distance(double x, double y) {
    check_unit(x, "patchwork interval point");
    check_unit(y, "patchwork interval point");
    if (x > y) std::swap(x, y);
    if (y <= 0.25) return std::sqrt(y - x);
    if (x >= 0.25) return y - x;
    return std::sqrt(0.25 - x) + (y - 0.25);
}

namespace {

/// Rightmost point reachable from x with budget r (the ball is an interval
/// because moving monotonically away is always optimal on a line).
double pw_reach_right(double x, double r) {
    if (x >= 0.25) return std::min(1.0, x + r);
    const double cross = std::sqrt(0.25 - x);
    if (r <= cross) return x + r * r;
    return std::min(1.0, 0.25 + (r - cross));
}

double pw_reach_left(double x, double r) {
    if (x <= 0.25) return std::max(0.0, x - r * r);
    if (r <= x - 0.25) return x - r;
    const double rem = r - (x - 0.25);
    return std::max(0.0, 0.25 - rem * rem);
}

double patchwork_interval_ball(double x, double r) {
    return pw_reach_right(x, r) - pw_reach_left(x, r);
}

} // namespace

// ==========================================================================
// Patchwork square (station-graph metric)
// ==========================================================================

namespace {

struct SquareImpl {
    bool l1 = false;
    int M = 48;  // stations per half-arm (polyline resolution of boundary crossings)
    std::vector<std::array<double, 2>> stations;
    std::vector<double> apsp;  // row-major stations x stations

    // Closed quadrants: 0 = bottom-left (exponent 1/3), 1 = bottom-right (1/2),
    // 2 = top-left (1/2), 3 = top-right (1).
    static constexpr double kExp[4] = {1.0 / 3.0, 0.5, 0.5, 1.0};

    static int quad_mask(double x, double y) {
        int m = 0;
        if (x <= 0.5 && y <= 0.5) m |= 1;
        if (x >= 0.5 && y <= 0.5) m |= 2;
        if (x <= 0.5 && y >= 0.5) m |= 4;
        if (x >= 0.5 && y >= 0.5) m |= 8;
        return m;
    }

    double norm(double dx, double dy) const {
        dx = std::abs(dx);
        dy = std::abs(dy);
        return l1 ? dx + dy : std::max(dx, dy);
    }

    /// Distance within a single shared closed quadrant (the shared edge
    /// belongs to whichever patch gives the minimizing distance).
    double direct(double ux, double uy, double vx, double vy) const {
        const int mask = quad_mask(ux, uy) & quad_mask(vx, vy);
        if (mask == 0) return kInf;
        const double n = norm(ux - vx, uy - vy);
        double best = kInf;
        for (int q = 0; q < 4; ++q)
            if (mask & (1 << q)) best = std::min(best, std::pow(n, kExp[q]));
        return best;
    }

    double dist(double ux, double uy, double vx, double vy) const {
        check_unit(ux, "patchwork square coordinate");
        check_unit(uy, "patchwork square coordinate");
        check_unit(vx, "patchwork square coordinate");
        check_unit(vy, "patchwork square coordinate");
        double best = direct(ux, uy, vx, vy);
        const int n = (int)stations.size();
        std::vector<double> du(n), dv(n);
        std::vector<int> uIdx, vIdx;
        for (int i = 0; i < n; ++i) {
            du[i] = direct(ux, uy, stations[i][0], stations[i][1]);
            if (std::isfinite(du[i])) uIdx.push_back(i);
            dv[i] = direct(vx, vy, stations[i][0], stations[i][1]);
            if (std::isfinite(dv[i])) vIdx.push_back(i);
        }
        for (int i : uIdx)
            for (int j : vIdx)
                // Summation order (leg + leg) + path keeps the result exactly
                // symmetric in u and v.
                best = std::min(best, (du[i] + dv[j]) + apsp[(size_t)i * n + j]);
        return best;
    }
};

constexpr double SquareImpl::kExp[4];

std::shared_ptr<const SquareImpl> build_square(bool l1) {
    auto sq = std::make_shared<SquareImpl>();
    sq->l1 = l1;
    const int M = sq->M;
    // Stations along the four arms of the interior cross, center included once.
    for (int i = 0; i < M; ++i) {
        const double t = 0.5 * i / M;
        sq->stations.push_back({0.5, t});        // bottom arm
        sq->stations.push_back({0.5, 1.0 - t});  // top arm
        sq->stations.push_back({t, 0.5});        // left arm
        sq->stations.push_back({1.0 - t, 0.5});  // right arm
    }
    sq->stations.push_back({0.5, 0.5});
    const int n = (int)sq->stations.size();
    sq->apsp.assign((size_t)n * n, kInf);
    for (int i = 0; i < n; ++i) {
        sq->apsp[(size_t)i * n + i] = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double d = sq->direct(sq->stations[i][0], sq->stations[i][1],
                                        sq->stations[j][0], sq->stations[j][1]);
            sq->apsp[(size_t)i * n + j] = d;
            sq->apsp[(size_t)j * n + i] = d;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const double dik = sq->apsp[(size_t)i * n + k];
            if (!std::isfinite(dik)) continue;
            for (int j = 0; j < n; ++j) {
                const double via = dik + sq->apsp[(size_t)k * n + j];
                if (via < sq->apsp[(size_t)i * n + j]) sq->apsp[(size_t)i * n + j] = via;
            }
        }
    return sq;
}

} // namespace

// ==========================================================================
// Space factories
// ==========================================================================

namespace {

MMSpace euclid_interval_space() {
    MMSpace s;
    s.name = "euclid-interval";
    s.Q = 1.0;
    s.dimLower = s.dimUpper = 1.0;
    s.diameter = 1.0;
    s.totalMeasure = 1.0;
    s.distance = [](const Point& p, const Point& q) {
        if (p.size() != 1 || q.size() != 1)
            throw std::domain_error("interval points are one-dimensional");
        return std::abs(p[0] - q[0]);
    };
    s.sample = [](std::uint64_t seed, std::uint64_t index) {
        return Point{uniform01(seed, index, 0)};
    };
    s.ballMeasure = [](const Point& p, double r) {
        return std::min(1.0, p[0] + r) - std::max(0.0, p[0] - r);
    };
    return s;
}

MMSpace euclid_plane_space() {
    MMSpace s;
    s.name = "euclid-plane";
    s.Q = 2.0;
    s.dimLower = s.dimUpper = 2.0;
    s.diameter = 2.0 * std::sqrt(2.0);  // diagonal of the sampling window
    s.totalMeasure = 4.0;               // window [-1/2, 3/2]^2
    s.distance = [](const Point& p, const Point& q) {
        if (p.size() != 2 || q.size() != 2)
            throw std::domain_error("plane points are two-dimensional");
        return std::hypot(p[0] - q[0], p[1] - q[1]);
    };
    s.sample = [](std::uint64_t seed, std::uint64_t index) {
        return Point{-0.5 + 2.0 * uniform01(seed, index, 0),
                     -0.5 + 2.0 * uniform01(seed, index, 1)};
    };
    s.ballMeasure = [](const Point&, double r) {
        return M_PI * r * r;  // the plane itself, not the sampling window
    };
    return s;
}

MMSpace heisenberg_space() {
    MMSpace s;
    s.name = "heisenberg";
    s.Q = 4.0;
    s.dimLower = s.dimUpper = 4.0;
    s.diameter = std::sqrt(10.0);  // gauge bound over the window: (8^2 + 6^2)^{1/4}
    s.totalMeasure = 8.0;                                // window [-1, 1]^3
    s.distance = heisenberg_distance;
    s.sample = [](std::uint64_t seed, std::uint64_t index) {
        return Point{-1.0 + 2.0 * uniform01(seed, index, 0),
                     -1.0 + 2.0 * uniform01(seed, index, 1),
                     -1.0 + 2.0 * uniform01(seed, index, 2)};
    };
    s.ballMeasure = [](const Point&, double r) { return heisenberg_ball_measure(r); };
    return s;
}

MMSpace laakso_f_space(int depth) {
    if (depth < 1 || depth > kMaxLaaksoDepth)
        throw std::domain_error("Laakso model depth must lie in [1, " +
                                std::to_string(kMaxLaaksoDepth) + "]");
    auto params = std::make_shared<LaaksoParams>();
    params->depth = depth;
    MMSpace s;
    s.name = "laakso-f";
    s.Q = 1.5;
    s.dimLower = s.dimUpper = 1.5;
    s.diameter = 1.5;  // upper bound: height span 1 plus worst wormhole detours
    s.totalMeasure = 1.0;
    s.distance = [depth](const Point& p, const Point& q) { return laakso_distance(p, q, depth); };
    s.sample = [depth](std::uint64_t seed, std::uint64_t index) {
        Point p;
        p.reserve(2 + depth);
        p.push_back(uniform01(seed, index, 0));
        p.push_back((double)depth);
        for (int i = 1; i <= depth; ++i)
            p.push_back(uniform01(seed, index, (std::uint64_t)i) < 0.5 ? 1.0 : 2.0);
        return p;
    };
    s.impl = params;
    return s;
}

MMSpace patchwork_interval_space() {
    MMSpace s;
    s.name = "patchwork-interval";
    s.Q = 2.0;  // the larger patch exponent normalizes the zeta machinery
    s.dimLower = 1.0;
    s.dimUpper = 2.0;
    s.diameter = patchwork_interval_distance(0.0, 1.0);
    s.totalMeasure = 1.0;
    s.distance = [](const Point& p, const Point& q) {
        if (p.size() != 1 || q.size() != 1)
            throw std::domain_error("interval points are one-dimensional");
        return patchwork_interval_distance(p[0], q[0]);
    };
    s.sample = [](std::uint64_t seed, std::uint64_t index) {
        return Point{uniform01(seed, index, 0)};
    };
    s.ballMeasure = [](const Point& p, double r) { return patchwork_interval_ball(p[0], r); };
    return s;
}

MMSpace patchwork_square_space(bool l1) {
    auto sq = build_square(l1);
    MMSpace s;
    s.name = l1 ? "patchwork-square-l1" : "patchwork-square-linf";
    s.Q = 6.0;  // the largest patch volume exponent
    s.dimLower = 2.0;
    s.dimUpper = 6.0;
    // Every pair connects through the center in at most two legs, so twice
    // the largest single-patch span certifies an upper bound on the diameter.
    {
        const double span = l1 ? 1.0 : 0.5;
        double maxLeg = 0.0;
        for (double e : SquareImpl::kExp) maxLeg = std::max(maxLeg, std::pow(span, e));
        s.diameter = 2.0 * maxLeg;
    }
    s.totalMeasure = 1.0;
    s.distance = [sq](const Point& p, const Point& q) {
        if (p.size() != 2 || q.size() != 2)
            throw std::domain_error("square points are two-dimensional");
        return sq->dist(p[0], p[1], q[0], q[1]);
    };
    s.sample = [](std::uint64_t seed, std::uint64_t index) {
        return Point{uniform01(seed, index, 0), uniform01(seed, index, 1)};
    };
    s.impl = sq;
    return s;
}

} // namespace

MMSpace snowflake(const MMSpace& base, double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::domain_error("snowflake exponent must lie in (0, 1], got " + fmt_num(p));
    if (base.diameter > 1.0 + 1e-12)
        throw std::domain_error("snowflake requires a space of diameter at most 1; " + base.name +
                                " has diameter " + fmt_num(base.diameter));
    MMSpace s = base;
    s.name = base.name + "^" + fmt_num(p);
    s.Q = base.Q / p;
    s.dimLower = base.dimLower / p;
    s.dimUpper = base.dimUpper / p;
    s.diameter = std::pow(base.diameter, p);
    s.distance = [d = base.distance, p](const Point& a, const Point& b) {
        return std::pow(d(a, b), p);
    };
    if (base.ballMeasure)
        s.ballMeasure = [bm = base.ballMeasure, p](const Point& x, double r) {
            return r <= 0.0 ? bm(x, 0.0) : bm(x, std::pow(r, 1.0 / p));
        };
    if (base.auditRadiusLo > 0.0) s.auditRadiusLo = std::pow(base.auditRadiusLo, p);
    if (base.auditRadiusHi > 0.0) s.auditRadiusHi = std::pow(base.auditRadiusHi, p);
    return s;
}

std::vector<std::string> space_names() {
    return {"euclid-interval", "euclid-plane", "heisenberg",      "laakso-f",
            "laakso-graph",    "patchwork-interval", "patchwork-square", "snowflake"};
}

namespace {

[[noreturn]] void unknown_space(const std::string& name) {
    std::string msg = "unknown space \"" + name + "\"; valid names:";
    for (const auto& n : space_names()) msg += " " + n;
    throw std::out_of_range(msg);
}

} // namespace

MMSpace make_space(const nlohmann::json& spec) {
    nlohmann::json j = spec;
    if (j.is_string()) j = nlohmann::json{{"space", j.get<std::string>()}};
    if (!j.is_object() || !j.contains("space"))
        throw std::domain_error("space spec must be a name or an object with a \"space\" field");
    const std::string name = j.at("space").get<std::string>();
    if (name == "euclid-interval") return euclid_interval_space();
    if (name == "euclid-plane") return euclid_plane_space();
    if (name == "heisenberg") return heisenberg_space();
    if (name == "laakso-f") return laakso_f_space(j.value("depth", 8));
    if (name == "laakso-graph") return laakso_graph_space(j.value("level", 6));
    if (name == "patchwork-interval") return patchwork_interval_space();
    if (name == "patchwork-square") {
        const std::string metric = j.value("metric", "linf");
        if (metric != "linf" && metric != "l1")
            throw std::domain_error("patchwork-square metric must be \"linf\" or \"l1\"");
        return patchwork_square_space(metric == "l1");
    }
    if (name == "snowflake") {
        if (!j.contains("base"))
            throw std::domain_error("snowflake spec needs a \"base\" space");
        return snowflake(make_space(j.at("base")), j.value("p", 0.5));
    }
    unknown_space(name);
}

// ==========================================================================
// Set factories
// ==========================================================================

namespace {

double clamp_out(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

double quarter_cantor_distance(double x) {
    if (x < 0.0) return -x;
    if (x > 1.0) return x - 1.0;
    double scale = 1.0;
    for (int i = 0; i < 60; ++i) {
        if (x >= 0.25 && x <= 0.75) return scale * std::min(x - 0.25, 0.75 - x);
        x = (x > 0.75) ? 4.0 * x - 3.0 : 4.0 * x;
        scale *= 0.25;
    }
    return 0.0;
}

// Largest point of the quarter-Cantor set (base-4 digits 0 and 3) at or
// below u, assuming 0 <= u <= 1.
double quarter_cantor_below(double u) {
    double lo = 0.0, scale = 1.0;
    for (int i = 0; i < 60 && scale > 1e-18; ++i) {
        const double rel = (u - lo) / scale;
        if (rel >= 0.75) {
            lo += 0.75 * scale;
        } else if (rel >= 0.25) {
            return lo + 0.25 * scale;  // u sits in the removed middle half
        }
        scale *= 0.25;
    }
    return u;  // u is within 4^-60 of the set
}

// Smallest point of the set at or above u, assuming 0 <= u <= 1.
double quarter_cantor_above(double u) {
    double lo = 0.0, scale = 1.0;
    for (int i = 0; i < 60 && scale > 1e-18; ++i) {
        const double rel = (u - lo) / scale;
        if (rel > 0.75) {
            lo += 0.75 * scale;
        } else if (rel > 0.25) {
            return lo + 0.75 * scale;
        }
        scale *= 0.25;
    }
    return u;
}

SampleWindow box_window(std::vector<double> lo, std::vector<double> hi) {
    SampleWindow w;
    double measure = 1.0;
    for (size_t i = 0; i < lo.size(); ++i) measure *= hi[i] - lo[i];
    w.measure = measure;
    w.sample = [lo = std::move(lo), hi = std::move(hi)](std::uint64_t seed, std::uint64_t index) {
        Point p(lo.size());
        for (size_t i = 0; i < lo.size(); ++i)
            p[i] = lo[i] + (hi[i] - lo[i]) * uniform01(seed, index, i);
        return p;
    };
    return w;
}

[[noreturn]] void unknown_set(const MMSpace& space, const std::string& name,
                              const std::string& valid) {
    throw std::out_of_range("unknown set \"" + name + "\" for space " + space.name +
                            "; valid names: " + valid);
}

} // namespace

PointSet make_set(const MMSpace& space, const nlohmann::json& spec) {
    nlohmann::json j = spec;
    if (j.is_string()) j = nlohmann::json{{"set", j.get<std::string>()}};
    if (!j.is_object() || !j.contains("set"))
        throw std::domain_error("set spec must be a name or an object with a \"set\" field");
    const std::string name = j.at("set").get<std::string>();
    PointSet set;
    set.name = name;

    // Generic point and box sets work on any space with vector coordinates.
    if (name == "point") {
        const auto coords = j.at("coords").get<std::vector<double>>();
        set.distanceTo = [dist = space.distance, coords](const Point& p) {
            return dist(p, coords);
        };
        return set;
    }
    if (name == "box") {
        const auto lo = j.at("lo").get<std::vector<double>>();
        const auto hi = j.at("hi").get<std::vector<double>>();
        if (lo.size() != hi.size() || lo.empty())
            throw std::domain_error("box set needs matching nonempty lo/hi arrays");
        if (space.name != "euclid-interval" && space.name != "euclid-plane")
            unknown_set(space, name, "(box sets require a Euclidean space)");
        set.distanceTo = [lo, hi](const Point& p) {
            double s = 0.0;
            for (size_t i = 0; i < lo.size(); ++i) {
                const double d = clamp_out(p[i], lo[i], hi[i]);
                s += d * d;
            }
            return std::sqrt(s);
        };
        std::vector<double> wlo = lo, whi = hi;
        set.windowFor = [wlo, whi](double t) {
            std::vector<double> a = wlo, b = whi;
            for (size_t i = 0; i < a.size(); ++i) {
                a[i] -= t;
                b[i] += t;
            }
            return box_window(std::move(a), std::move(b));
        };
        return set;
    }

    if (space.name == "euclid-plane") {
        if (name == "unit-segment") {
            set.distanceTo = [](const Point& p) {
                return std::hypot(clamp_out(p[0], 0.0, 1.0), p[1]);
            };
            set.windowFor = [](double t) { return box_window({-t, -t}, {1.0 + t, t}); };
            return set;
        }
        if (name == "filled-square") {
            set.distanceTo = [](const Point& p) {
                return std::hypot(clamp_out(p[0], 0.0, 1.0), clamp_out(p[1], 0.0, 1.0));
            };
            set.windowFor = [](double t) { return box_window({-t, -t}, {1.0 + t, 1.0 + t}); };
            return set;
        }
        unknown_set(space, name, "unit-segment filled-square point box");
    }
    if (space.name == "euclid-interval") {
        if (name == "quarter-cantor") {
            set.distanceTo = [](const Point& p) { return quarter_cantor_distance(p[0]); };
            set.windowFor = [](double t) { return box_window({-t}, {1.0 + t}); };
            return set;
        }
        unknown_set(space, name, "quarter-cantor point box");
    }
    if (space.name == "heisenberg") {
        if (name == "origin") {
            set.distanceTo = [](const Point& p) { return heisenberg_gauge(p); };
            set.windowFor = [](double t) {
                return box_window({-t, -t, -t * t}, {t, t, t * t});
            };
            return set;
        }
        if (name == "t-axis-segment") {
            // d((x,y,t), {(0,0,s): s in [0,1]}) has the closed form
            // ((x^2+y^2)^2 + dist(t, [0,1])^2)^{1/4}: the group difference
            // against an axis point keeps x, y, and shifts only t.
            set.distanceTo = [](const Point& p) {
                check_h_point(p);
                const double rho2 = p[0] * p[0] + p[1] * p[1];
                const double dt = clamp_out(p[2], 0.0, 1.0);
                return std::pow(rho2 * rho2 + dt * dt, 0.25);
            };
            set.windowFor = [](double t) {
                return box_window({-t, -t, -t * t}, {t, t, 1.0 + t * t});
            };
            return set;
        }
        unknown_set(space, name, "origin t-axis-segment point");
    }
    if (space.name == "laakso-f") {
        const auto params = std::static_pointer_cast<const LaaksoParams>(space.impl);
        const int depth = params->depth;
        if (name == "wormhole-point") {
            // The glued pair at height 1/4: the all-1 address and its
            // letter-1 toggle.
            std::vector<int> ones((size_t)depth, 1);
            std::vector<int> toggled = ones;
            toggled[0] = 2;
            const Point rep1 = laakso_point(0.25, ones);
            const Point rep2 = laakso_point(0.25, toggled);
            set.distanceTo = [depth, rep1, rep2](const Point& p) {
                return std::min(laakso_distance(p, rep1, depth), laakso_distance(p, rep2, depth));
            };
            return set;
        }
        if (name == "cantor-fiber") {
            // Quarter-Cantor subset of the fiber over the all-1 address:
            // travel must fix every differing letter and end at a height
            // belonging to the quarter-Cantor set.  The walk cost as a
            // function of the end height v is piecewise linear, with kinks
            // only at h and at the nearest wormhole height of each needed
            // order on either side of h, so the minimum over Cantor end
            // heights is attained adjacent to one of those kinks.
            set.distanceTo = [depth](const Point& p) {
                const LaaksoAddr a = parse_laakso(p, depth);
                std::vector<int> orders;
                for (int i = 0; i < a.n; ++i)
                    if (a.letters[i] != 1.0) orders.push_back(i + 1);
                std::vector<double> kinks = {a.h};
                for (int j : orders) {
                    const double below = order_below_gap(j, a.h);
                    const double above = order_above_gap(j, a.h);
                    if (std::isfinite(below)) kinks.push_back(a.h - below);
                    if (std::isfinite(above)) kinks.push_back(a.h + above);
                }
                double best = kInf;
                for (double m : kinks)
                    for (double v : {quarter_cantor_below(m), quarter_cantor_above(m)})
                        best = std::min(best, traversal_cost(orders, a.h, v));
                return best;
            };
            return set;
        }
        unknown_set(space, name, "wormhole-point cantor-fiber point");
    }
    if (space.name == "laakso-graph") {
        if (name == "upper-geodesic") {
            const auto g = std::static_pointer_cast<const LaaksoGraphLevel>(space.impl);
            set.distanceTo = [g](const Point& p) {
                if (p.size() != 2)
                    throw std::domain_error("laakso graph points are {edgeIndex, offset}");
                return g->distanceToUpperArc((int)p[0], p[1], 0.0, 0.25);
            };
            return set;
        }
        unknown_set(space, name, "upper-geodesic point");
    }
    if (space.name == "patchwork-interval") {
        if (name == "sub-interval") {
            set.distanceTo = [](const Point& p) {
                check_unit(p[0], "patchwork interval point");
                if (p[0] < 0.125) return std::sqrt(0.125 - p[0]);
                if (p[0] > 0.5) return p[0] - 0.5;
                return 0.0;
            };
            return set;
        }
        unknown_set(space, name, "sub-interval point");
    }
    unknown_set(space, name, "point (plus space-specific names)");
}

// ==========================================================================
// Regularity audit
// ==========================================================================

AuditReport regularity_audit(const MMSpace& space, int nBalls, std::uint64_t seed) {
    if (nBalls < 100)
        throw std::invalid_argument("regularity audit needs at least 100 ball evaluations");
    const int nRadii = 6;
    const int nCenters = std::max(20, nBalls / nRadii);
    const bool exact = (bool)space.ballMeasure;
    double lo = space.auditRadiusLo > 0.0 ? space.auditRadiusLo : space.diameter / 256.0;
    double hi = space.auditRadiusHi > 0.0 ? space.auditRadiusHi : space.diameter / 4.0;
    if (!exact) lo = std::max(lo, space.diameter / 64.0);  // sampled measures need hits

    std::vector<double> radii(nRadii);
    for (int i = 0; i < nRadii; ++i)
        radii[i] = lo * std::pow(hi / lo, (double)i / (nRadii - 1));

    const int probesPerCenter = 1 << 13;
    const std::uint64_t probeSeed = splitmix64(seed ^ 0x5CA1AB1E0DDBA11ull);

    std::vector<double> slopes;
    slopes.reserve(nCenters);
    double kLower = kInf, kUpper = 0.0;
    const double saturation = 0.999 * space.totalMeasure;

    for (int c = 0; c < nCenters; ++c) {
        const Point x = space.sample(seed, (std::uint64_t)c);
        std::vector<double> dists;
        if (!exact) {
            dists.resize(probesPerCenter);
            for (int i = 0; i < probesPerCenter; ++i)
                dists[i] = space.distance(
                    x, space.sample(probeSeed, (std::uint64_t)c * probesPerCenter + i));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int rows = 0;
        for (double r : radii) {
            double mu;
            if (exact) {
                mu = space.ballMeasure(x, r);
            } else {
                int hits = 0;
                for (double d : dists) hits += (d <= r);
                mu = space.totalMeasure * (double)hits / probesPerCenter;
            }
            if (!(mu > 0.0) || mu >= saturation) continue;
            const double lx = std::log(r), ly = std::log(mu);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++rows;
            kLower = std::min(kLower, mu / std::pow(r, space.dimUpper));
            kUpper = std::max(kUpper, mu / std::pow(r, space.dimLower));
        }
        if (rows < 3) continue;
        const double denom = rows * sxx - sx * sx;
        if (denom <= 0.0) continue;
        slopes.push_back((rows * sxy - sx * sy) / denom);
    }

    if (slopes.size() < 10)
        throw std::runtime_error("regularity audit collected too few usable ball measurements");
    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double q) {
        const double pos = q * (slopes.size() - 1);
        const size_t i = (size_t)pos;
        const double frac = pos - i;
        return i + 1 < slopes.size() ? slopes[i] * (1 - frac) + slopes[i + 1] * frac
                                     : slopes.back();
    };

    AuditReport rep;
    rep.d1 = quantile(0.05);
    rep.d2 = quantile(0.95);
    rep.kLower = kLower;
    rep.kUpper = kUpper;
    rep.centers = (int)slopes.size();
    rep.radiusLo = lo;
    rep.radiusHi = hi;

    // Verdicts use the dimension-envelope convention: the declared exponents
    // bound the observed local dimensions from above ("upper"), from below
    // ("lower"), or both.
    const double tol = 0.25;
    const bool okUp = rep.d2 <= space.dimUpper + tol;
    const bool okLo = rep.d1 >= space.dimLower - tol;
    if (okUp && okLo) {
        rep.verdict = (space.dimLower == space.dimUpper)
                          ? "regular"
                          : "type(" + fmt_num(space.dimLower) + "," + fmt_num(space.dimUpper) + ")";
    } else if (okUp) {
        rep.verdict = "upper-only";
    } else if (okLo) {
        rep.verdict = "lower-only";
    } else {
        rep.verdict = "type(" + fmt_num(rep.d1) + "," + fmt_num(rep.d2) + ")";
    }
    return rep;
}

void to_json(nlohmann::json& j, const AuditReport& r) {
    j = nlohmann::json{{"d1", r.d1},           {"d2", r.d2},
                       {"kLower", r.kLower},   {"kUpper", r.kUpper},
                       {"verdict", r.verdict}, {"centers", r.centers},
                       {"radiusLo", r.radiusLo}, {"radiusHi", r.radiusHi}};
}

} // namespace fraczeta
