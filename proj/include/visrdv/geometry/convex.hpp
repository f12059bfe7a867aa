#pragma once

#include <optional>
#include <vector>

#include "visrdv/geometry/point.hpp"

namespace visrdv {

// Closed half-plane {x : dot(x - point, normal) >= 0}; normal has unit length.
struct HalfPlane {
    Point point;
    Point normal;

    double signed_distance(Point x) const { return dot(x - point, normal); }
    bool contains(Point x, double tol) const { return signed_distance(x) >= -tol; }
};

// Convex polygon with counterclockwise vertices.  One vertex is a point and two
// vertices a segment; an empty region is never represented by this type.
struct ConvexRegion {
    std::vector<Point> vertices;

    bool contains(Point p, double tol) const;
    double perimeter() const;
    double area() const;
    double diameter() const;
};

// Hull of a point set with collinear points dropped.  Throws on empty input.
ConvexRegion convex_hull(const std::vector<Point>& pts, double tol = 0.0);

bool is_convex(const std::vector<Point>& ring, double tol);

std::optional<ConvexRegion> clip_halfplane(const ConvexRegion& region, const HalfPlane& h, double tol);
std::optional<ConvexRegion> intersect_convex(const ConvexRegion& a, const ConvexRegion& b, double tol);

// Inscribed regular polygon of a disk with one vertex at angle phase.
ConvexRegion disk_polygon(Point center, double radius, int sides, double phase);

double distance_to_convex(Point p, const ConvexRegion& region);
double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b);

struct Circle {
    Point center;
    double radius = 0.0;
};

// Smallest circle enclosing the points; deterministic for a given input.
Circle min_enclosing_circle(const std::vector<Point>& pts);

// Center of the smallest enclosing circle of a convex region.
Point circumcenter(const ConvexRegion& region);

}  // namespace visrdv
