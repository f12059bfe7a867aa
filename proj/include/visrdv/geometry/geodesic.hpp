#pragma once

#include <mutex>
#include <vector>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/point.hpp"

namespace visrdv {

// Shortest paths inside a simple polygon, routed through its reflex vertices.
class PathFinder {
public:
    PathFinder(std::vector<Point> polygon, double tol);

    const std::vector<Point>& polygon() const { return poly_; }
    double tolerance() const { return tol_; }

    bool visible(Point a, Point b) const;
    // Polyline from a to b; both must lie in the polygon.
    std::vector<Point> shortest_path(Point a, Point b) const;
    // Paths between every pair (i < j) of the given points, as pairs of
    // endpoints indices and polylines.
    struct PairPath {
        int i = 0;
        int j = 0;
        std::vector<Point> path;
    };
    std::vector<PairPath> all_pairs(const std::vector<Point>& pts) const;

private:
    void build_reflex_graph() const;
    std::vector<Point> route(Point a, Point b, const std::vector<int>& vis_a, const std::vector<int>& vis_b) const;
    std::vector<int> visible_reflex(Point p) const;

    std::vector<Point> poly_;
    double tol_;
    std::vector<int> reflex_;
    mutable std::once_flag built_;
    mutable std::vector<std::vector<std::pair<int, double>>> reflex_adj_;
};

std::vector<Point> geodesic_path(const ContractedRegion& region, Point a, Point b);
double geodesic_length(const std::vector<Point>& path);

// Smallest set containing the points that holds every shortest path between
// its members.  `walk` traces its boundary counterclockwise; a segment or a
// dangling tail is traversed in both directions, so a two-point hull has
// perimeter twice the distance.
struct GeodesicHull {
    std::vector<Point> walk;
    double perimeter = 0.0;
    // Input indices whose removal shrinks the hull (first copy of duplicates).
    std::vector<int> vertices;

    bool contains(Point p, double tol) const;
};

GeodesicHull relative_convex_hull(const std::vector<Point>& pts, const PathFinder& paths);
GeodesicHull relative_convex_hull(const std::vector<Point>& pts, const ContractedRegion& region);

}  // namespace visrdv
