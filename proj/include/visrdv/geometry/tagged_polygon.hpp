#pragma once

#include <cstdint>
#include <vector>

#include "visrdv/geometry/convex.hpp"
#include "visrdv/geometry/point.hpp"

namespace visrdv {

// Where a polygon edge came from.
enum class EdgeKind : std::uint8_t {
    wall,    // offset of environment edge `id`
    arc,     // tangent piece of concavity `id`; `angle` is the outward radial angle
    window,  // visibility cut through a blocking vertex
    disk,    // side of a disk polygon
    cut,     // half-plane clip number `id`
};

struct EdgeSource {
    EdgeKind kind = EdgeKind::wall;
    int id = -1;
    double angle = 0.0;
};

// Simple polygon, counterclockwise, where sources[k] describes the edge from
// points[k] to points[k + 1].
struct TaggedPolygon {
    std::vector<Point> points;
    std::vector<EdgeSource> sources;

    int size() const { return static_cast<int>(points.size()); }
    bool empty() const { return points.empty(); }
    Point at(int k) const { return points[((k % size()) + size()) % size()]; }
};

// Sutherland-Hodgman clip that keeps edge sources; new edges get `tag`.
TaggedPolygon clip_tagged(const TaggedPolygon& poly, const HalfPlane& h, EdgeSource tag, double tol);
// Same, writing into out (reusing its storage).  out must not alias poly.
void clip_tagged_into(const TaggedPolygon& poly, const HalfPlane& h, EdgeSource tag, double tol, TaggedPolygon& out);

// Drop zero-length edges.
TaggedPolygon cleaned(const TaggedPolygon& poly, double tol);

// Drop vertices between two collinear edges of the same source.
TaggedPolygon merged_collinear(const TaggedPolygon& poly, double tol);

inline bool same_edge_source(const EdgeSource& a, const EdgeSource& b) {
    return a.kind == b.kind && a.id == b.id && a.angle == b.angle;
}

}  // namespace visrdv
