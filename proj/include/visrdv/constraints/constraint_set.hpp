#pragma once

#include <vector>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/convex.hpp"
#include "visrdv/geometry/tagged_polygon.hpp"

namespace visrdv {

struct TangentCut {
    int concavity = -1;  // -1 for a cleanup cut at a leftover corner
    Point touch;
    HalfPlane plane;
};

// Convex set in which two mutually visible robots may move without losing
// sight of each other.
struct ConstraintSet {
    ConvexRegion region;
    std::vector<TangentCut> cuts;
    int iterations = 0;      // tangent cuts at concavities
    int cleanup_clips = 0;   // extra cuts at corners left by the polygonal arcs
    double convexity_defect = 0.0;  // depth of the worst dent before taking the hull
};

struct ConstraintOptions {
    int disk_sides = 64;  // even, so both robots can sit on disk-polygon vertices
};

// Point of the arc closest to the segment [a,b].
Point nearest_concavity_point(const StrictConcavity& c, Point a, Point b);

// Half-plane bounded by the tangent to the arc at v, on the side away from
// the arc center.
HalfPlane internal_tangent_halfplane(const StrictConcavity& c, Point v);

// Constraint set for the ordered pair (pi, pj).  The robots must be within
// range r and see each other in the polygonal region.  `vis_i` may carry a
// precomputed visibility polygon of pi.
ConstraintSet constraint_set(const ContractedRegion& region, Point pi, Point pj, double r,
                             const ConstraintOptions& opts = {}, const TaggedPolygon* vis_i = nullptr);

// Intersection of the pairwise constraint sets of robot i over its
// neighbours.  With no neighbours the set for the degenerate pair (pi, pi) is
// returned.
ConvexRegion combined_constraint_set(int i, const std::vector<Point>& pts, const std::vector<int>& neighbors,
                                     const ContractedRegion& region, double r, const ConstraintOptions& opts = {},
                                     const TaggedPolygon* vis_i = nullptr);

}  // namespace visrdv
