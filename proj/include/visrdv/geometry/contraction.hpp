#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "visrdv/geometry/environment.hpp"
#include "visrdv/geometry/point.hpp"
#include "visrdv/geometry/tagged_polygon.hpp"

namespace visrdv {

struct InvalidContraction : std::runtime_error {
    enum class Reason { empty, disconnected, bad_epsilon };
    Reason reason;
    InvalidContraction(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
};

// Circular piece of the contracted boundary around a reflex corner.  Sweeping
// counterclockwise from start_angle to end_angle covers the arc.
struct StrictConcavity {
    int id = 0;
    int reflex_vertex = 0;  // index into the environment
    Point center;
    double radius = 0.0;
    double start_angle = 0.0;
    double end_angle = 0.0;
    std::vector<int> edges;  // polygon edges approximating this arc

    double sweep() const { return wrap_two_pi(end_angle - start_angle); }
    bool covers_angle(double a, double slack = 0.0) const;
    // Point of the arc closest to the segment [a,b]: project and clamp.
    Point closest_point_to_segment(Point a, Point b) const;
};

// Exact boundary piece: a segment, or an arc traversed clockwise about center.
struct BoundaryPiece {
    bool is_arc = false;
    Point a;
    Point b;
    Point center;
    double radius = 0.0;
    int concavity = -1;
};

class PathFinder;

struct ContractionOptions {
    // Largest gap allowed between a circular arc and its polygonal stand-in.
    // Non-positive selects 1e-3 of the environment's bounding-box diagonal.
    double chord_deviation = -1.0;
};

// The set of points of the environment at distance >= epsilon from its
// boundary, held both exactly (segments and arcs) and as a polygon that lies
// inside it.  Arcs are replaced by tangent polylines so the polygon is a
// subset of the exact region.
class ContractedRegion {
public:
    ContractedRegion(Environment env, double epsilon, ContractionOptions opts = {});

    const Environment& environment() const { return env_; }
    double epsilon() const { return epsilon_; }
    double tolerance() const { return tol_; }
    double scale() const { return scale_; }
    double chord_deviation() const { return chord_dev_; }

    const TaggedPolygon& polygon() const { return polygon_; }
    const std::vector<StrictConcavity>& concavities() const { return concavities_; }
    const std::vector<BoundaryPiece>& boundary() const { return boundary_; }
    int reflex_count() const { return reflex_count_; }

    // Exact membership, boundary included.
    bool contains(Point p) const;
    // Membership in the polygonal stand-in.
    bool contains_approx(Point p) const;
    // Exact robust visibility: the segment keeps epsilon clearance from the walls.
    bool robustly_visible(Point p, Point q) const;
    // Visibility inside the polygonal stand-in; implies robust visibility.
    bool sees(Point p, Point q) const;

    // Nearest point of the polygonal stand-in, nudged slightly inward.
    Point project_inside(Point p) const;

    double distance_to_boundary(Point p) const;

    const PathFinder& paths() const;

private:
    Environment env_;
    double epsilon_;
    double tol_;
    double scale_;
    double chord_dev_;
    int reflex_count_ = 0;
    TaggedPolygon polygon_;
    std::vector<StrictConcavity> concavities_;
    std::vector<BoundaryPiece> boundary_;
    mutable std::shared_ptr<PathFinder> paths_;
};

ContractedRegion contract(const Environment& env, double epsilon, ContractionOptions opts = {});

}  // namespace visrdv
