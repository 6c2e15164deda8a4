#pragma once

#include "fraczeta/spaces.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace fraczeta {

/// A finite level of the Laakso graph: the inverse-limit approximation
/// obtained from the unit interval by `level` rounds of replacing every edge
/// with the serial-parallel-serial gadget (serial quarter, two parallel
/// branches spanning the middle half, serial quarter), children scaled
/// proportionally to the parent edge.  Vertices persist across rounds; each
/// round multiplies the edge count by 4.  The measure splits by length along
/// serial concatenation and by fair coin across parallel branches, which
/// makes every level-n edge carry measure exactly 4^{-n}.
///
/// A point of the graph is (edge index, offset in [0, edge length]).
struct LaaksoGraphLevel {
    struct Edge {
        int u = 0;              ///< tail vertex (toward the 0-end)
        int v = 0;              ///< head vertex (toward the 1-end)
        double len = 0.0;
        bool onUpperPath = false;  ///< lies on the all-upper path across the level-1 parallel section
        double arcLo = 0.0;     ///< arc-length of the u-end along that path (from its start)
    };

    int level = 0;
    int vertexCount = 0;
    std::vector<Edge> edges;
    int sourceVertex = 0;  ///< the 0-end
    int sinkVertex = 0;    ///< the 1-end
    double edgeMeasure = 0.0;  ///< 4^{-level}, the measure of every edge

    /// Adjacency: for each vertex, (edge index) list.
    std::vector<std::vector<int>> incident;

    /// Shortest-path distances from the point (e, off) to every vertex.
    std::vector<double> vertexDistances(int e, double off) const;

    /// Shortest-path distance between two points.
    double distance(int e1, double off1, int e2, double off2) const;

    /// Exact measure of the closed ball around (e, off), one value per
    /// radius, computed from a single shortest-path sweep.
    std::vector<double> ballMeasures(int e, double off, const std::vector<double>& radii) const;

    /// Distance from (e, off) to the arc [arcFrom, arcTo] of the all-upper
    /// path (arc-length measured from the start of the level-1 parallel
    /// section).
    double distanceToUpperArc(int e, double off, double arcFrom, double arcTo) const;
};

/// Builds the level-n graph; n in [0, 10].
std::shared_ptr<const LaaksoGraphLevel> build_laakso_graph(int level);

/// Wraps a graph level as a metric measure space (declared exponent 2).
MMSpace laakso_graph_space(int level);

} // namespace fraczeta
