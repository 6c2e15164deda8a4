#include "fraczeta/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace fraczeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(const LaaksoGraphLevel& g, int e, double off) {
    if (e < 0 || e >= (int)g.edges.size())
        throw std::domain_error("laakso graph point has edge index " + std::to_string(e) +
                                " outside [0, " + std::to_string(g.edges.size()) + ")");
    const double len = g.edges[e].len;
    if (!(off >= 0.0 && off <= len))
        throw std::domain_error("laakso graph point offset " + std::to_string(off) +
                                " outside [0, " + std::to_string(len) + "]");
}

} // namespace

std::shared_ptr<const LaaksoGraphLevel> build_laakso_graph(int level) {
    if (level < 0 || level > 10)
        throw std::domain_error("laakso graph level must be in [0, 10], got " + std::to_string(level));

    auto g = std::make_shared<LaaksoGraphLevel>();
    g->level = level;
    g->sourceVertex = 0;
    g->sinkVertex = 1;
    g->edges = {LaaksoGraphLevel::Edge{0, 1, 1.0, false, 0.0}};
    int nextVertex = 2;

    for (int round = 1; round <= level; ++round) {
        std::vector<LaaksoGraphLevel::Edge> next;
        next.reserve(g->edges.size() * 4);
        for (const auto& e : g->edges) {
            const int a = nextVertex++;
            const int b = nextVertex++;
            const double q = e.len / 4.0;
            // Children: serial quarter, two parallel halves, serial quarter.
            LaaksoGraphLevel::Edge s1{e.u, a, q, e.onUpperPath, e.arcLo};
            LaaksoGraphLevel::Edge pu{a, b, 2.0 * q, e.onUpperPath, e.arcLo + q};
            LaaksoGraphLevel::Edge pl{a, b, 2.0 * q, false, 0.0};
            LaaksoGraphLevel::Edge s2{b, e.v, q, e.onUpperPath, e.arcLo + 3.0 * q};
            if (round == 1) {
                // The level-1 substitution creates the parallel section whose
                // all-upper traversal the upper-geodesic sets live on; arc
                // length starts at its entry vertex.
                pu.onUpperPath = true;
                pu.arcLo = 0.0;
            }
            next.push_back(s1);
            next.push_back(pu);
            next.push_back(pl);
            next.push_back(s2);
        }
        g->edges.swap(next);
    }

    g->vertexCount = nextVertex;
    g->edgeMeasure = std::pow(4.0, -level);
    g->incident.assign(g->vertexCount, {});
    for (int i = 0; i < (int)g->edges.size(); ++i) {
        g->incident[g->edges[i].u].push_back(i);
        g->incident[g->edges[i].v].push_back(i);
    }
    return g;
}

std::vector<double> LaaksoGraphLevel::vertexDistances(int e, double off) const {
    check_point(*this, e, off);
    std::vector<double> dist(vertexCount, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto push = [&](int v, double d) {
        if (d < dist[v]) {
            dist[v] = d;
            pq.push({d, v});
        }
    };
    push(edges[e].u, off);
    push(edges[e].v, edges[e].len - off);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int ei : incident[v]) {
            const Edge& f = edges[ei];
            const int w = (f.u == v) ? f.v : f.u;
            push(w, d + f.len);
        }
    }
    return dist;
}

double LaaksoGraphLevel::distance(int e1, double off1, int e2, double off2) const {
    check_point(*this, e2, off2);
    // Canonical source ordering keeps the result exactly symmetric despite
    // the direction-dependent relaxation order inside Dijkstra.
    if (e2 < e1 || (e2 == e1 && off2 < off1)) {
        std::swap(e1, e2);
        std::swap(off1, off2);
    }
    check_point(*this, e1, off1);
    const std::vector<double> d = vertexDistances(e1, off1);
    double best = d[edges[e2].u] + off2;
    best = std::min(best, d[edges[e2].v] + (edges[e2].len - off2));
    if (e1 == e2) best = std::min(best, std::abs(off1 - off2));
    return best;
}

std::vector<double> LaaksoGraphLevel::ballMeasures(int e, double off,
                                                   const std::vector<double>& radii) const {
    const std::vector<double> dist = vertexDistances(e, off);
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r >= 0.0)) throw std::domain_error("ball radius must be nonnegative");
        double total = 0.0;
        for (int i = 0; i < (int)edges.size(); ++i) {
            const Edge& f = edges[i];
            const double du = dist[f.u];
            const double dv = dist[f.v];
            double covered;
            if (i == e) {
                // Source edge: direct interval around the point, plus
                // whatever wraps back in through the endpoints.
                double lo1 = std::max(0.0, off - r), hi1 = std::min(f.len, off + r);
                double hi2 = std::min(f.len, std::max(0.0, r - du));          // [0, hi2]
                double lo3 = std::max(0.0, f.len - std::max(0.0, r - dv));    // [lo3, len]
                // Merge the three intervals (the first is never empty).
                std::array<std::pair<double, double>, 3> segs = {
                    {{lo1, hi1}, {0.0, hi2}, {lo3, f.len}}};
                std::sort(segs.begin(), segs.end());
                covered = 0.0;
                double curLo = segs[0].first, curHi = segs[0].second;
                for (int s = 1; s < 3; ++s) {
                    if (segs[s].second <= segs[s].first) continue;  // empty
                    if (segs[s].first <= curHi) {
                        curHi = std::max(curHi, segs[s].second);
                    } else {
                        covered += curHi - curLo;
                        curLo = segs[s].first;
                        curHi = segs[s].second;
                    }
                }
                covered += curHi - curLo;
            } else {
                covered = std::min(f.len, std::max(0.0, r - du) + std::max(0.0, r - dv));
            }
            total += covered * (edgeMeasure / f.len);
        }
        out.push_back(total);
    }
    return out;
}

double LaaksoGraphLevel::distanceToUpperArc(int e, double off, double arcFrom, double arcTo) const {
    if (!(arcFrom <= arcTo))
        throw std::domain_error("upper arc interval is empty");
    const std::vector<double> dist = vertexDistances(e, off);
    double best = kInf;
    for (int i = 0; i < (int)edges.size(); ++i) {
        const Edge& f = edges[i];
        if (!f.onUpperPath) continue;
        const double tLo = std::max(0.0, arcFrom - f.arcLo);
        const double tHi = std::min(f.len, arcTo - f.arcLo);
        if (tLo > tHi) continue;
        if (i == e) {
            const double direct = std::abs(off - std::clamp(off, tLo, tHi));
            best = std::min(best, direct);
        }
        best = std::min(best, dist[f.u] + tLo);
        best = std::min(best, dist[f.v] + (f.len - tHi));
    }
    return best;
}

MMSpace laakso_graph_space(int level) {
    auto g = build_laakso_graph(level);
    MMSpace s;
    s.name = "laakso-graph";
    s.Q = 2.0;
    s.dimLower = 2.0;
    s.dimUpper = 2.0;
    s.diameter = 1.0;
    s.totalMeasure = 1.0;
    s.distance = [g](const Point& p, const Point& q) {
        if (p.size() != 2 || q.size() != 2)
            throw std::domain_error("laakso graph points are {edgeIndex, offset}");
        return g->distance((int)p[0], p[1], (int)q[0], q[1]);
    };
    s.sample = [g](std::uint64_t seed, std::uint64_t index) {
        // All edges carry equal measure, and measure is uniform in length
        // along each edge, so edge-uniform x offset-uniform is
        // measure-uniform.
        const std::uint64_t n = g->edges.size();
        auto e = (std::uint64_t)(uniform01(seed, index, 0) * (double)n);
        if (e >= n) e = n - 1;
        const double off = uniform01(seed, index, 1) * g->edges[e].len;
        return Point{(double)e, off};
    };
    s.ballMeasure = [g](const Point& p, double r) {
        if (p.size() != 2)
            throw std::domain_error("laakso graph points are {edgeIndex, offset}");
        return g->ballMeasures((int)p[0], p[1], {r})[0];
    };
    // The level-n graph is genuinely one-dimensional below its finest edge
    // scale, so audits probe the window where the gadget structure, not the
    // discretization, controls ball growth.
    s.auditRadiusLo = std::pow(4.0, -4.5);
    s.auditRadiusHi = std::pow(4.0, -1.5);
    s.impl = g;
    return s;
}

} // namespace fraczeta
