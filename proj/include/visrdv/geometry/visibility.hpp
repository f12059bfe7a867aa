#pragma once

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/tagged_polygon.hpp"

namespace visrdv {

// Part of a simple polygon visible from p.  Polygon edges keep their source,
// cuts through blocking vertices are tagged as windows.  A point lying on the
// boundary is pushed a hair inside first.
TaggedPolygon visibility_polygon(const TaggedPolygon& poly, Point p, double tol);

// Visibility polygon of p inside the polygonal contracted region.  Throws
// PreconditionError when p is outside it.
TaggedPolygon visibility_region(const ContractedRegion& region, Point p);

// Visibility polygon intersected with the inscribed `sides`-gon of B(p, r).
TaggedPolygon sensing_region(const ContractedRegion& region, Point p, double r, int sides = 64);

// Clip a tagged polygon by every side of a convex polygon.
TaggedPolygon clip_to_convex(const TaggedPolygon& poly, const ConvexRegion& convex, EdgeSource tag, double tol);

}  // namespace visrdv
