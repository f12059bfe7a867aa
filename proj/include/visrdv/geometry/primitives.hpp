#pragma once

#include <optional>
#include <vector>

#include "visrdv/geometry/point.hpp"

namespace visrdv {

struct BoundingBox {
    Point lo;
    Point hi;
    double diameter() const { return dist(lo, hi); }
};

BoundingBox bounding_box(const std::vector<Point>& pts);

Point closest_on_segment(Point p, Point a, Point b);
double point_segment_distance(Point p, Point a, Point b);

struct ClosestPair {
    Point on_first;
    Point on_second;
    double distance = 0.0;
};

ClosestPair segment_segment_closest(Point a, Point b, Point c, Point d);
double segment_segment_distance(Point a, Point b, Point c, Point d);

// Intersection of segments [a,b] and [c,d] when they meet in a single point.
// t and u are the parameters along [a,b] and [c,d].  Parallel segments report
// no hit; callers that care about collinear overlap handle it separately.
struct SegmentHit {
    Point p;
    double t = 0.0;
    double u = 0.0;
};
std::optional<SegmentHit> segment_intersection(Point a, Point b, Point c, Point d, double tol);

// True when the segments cross at a point interior to both, with each endpoint
// at least tol away from the other segment's line.
bool segments_properly_cross(Point a, Point b, Point c, Point d, double tol);

double signed_area(const std::vector<Point>& poly);
double perimeter(const std::vector<Point>& poly);

enum class Location { outside, boundary, inside };

// Location of p relative to a closed simple polygon; points within tol of an
// edge count as boundary.
Location locate_point(const std::vector<Point>& poly, Point p, double tol);

inline bool inside_or_on(const std::vector<Point>& poly, Point p, double tol) {
    return locate_point(poly, p, tol) != Location::outside;
}

double distance_to_boundary(const std::vector<Point>& poly, Point p);
Point closest_on_boundary(const std::vector<Point>& poly, Point p);

// Whether the closed segment [a,b] lies in the closed polygon.  Grazing the
// boundary is allowed.
bool segment_in_polygon(const std::vector<Point>& poly, Point a, Point b, double tol);

// Indices (i, j) of the first pair of non-adjacent edges that touch, or
// nullopt when the closed polygon is simple.
std::optional<std::pair<int, int>> find_self_intersection(const std::vector<Point>& poly, double tol);

// Split points of a family of segments against each other: endpoints lying
// on another segment, then proper crossings.  Result k lists (parameter,
// point) pairs along segment k, including both endpoints, sorted.  Shared
// split points are bit-identical on both segments.
std::vector<std::vector<std::pair<double, Point>>> mutual_cuts(const std::vector<std::pair<Point, Point>>& segs,
                                                               double tol);

// Remove consecutive duplicates (within tol), including the wrap-around pair.
std::vector<Point> dedupe_ring(const std::vector<Point>& poly, double tol);

}  // namespace visrdv
