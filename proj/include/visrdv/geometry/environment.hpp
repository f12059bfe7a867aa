#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "visrdv/geometry/point.hpp"

namespace visrdv {

struct InvalidEnvironment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A simple polygon with counterclockwise vertex order.
struct Environment {
    std::vector<Point> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    Point vertex(int i) const { return vertices[((i % size()) + size()) % size()]; }
    double scale() const;  // bounding-box diagonal
    std::vector<int> reflex_vertices() const;
    int reflex_count() const { return static_cast<int>(reflex_vertices().size()); }
    bool contains(Point p, double tol) const;
    // Distance from p to the polygon boundary.
    double clearance(Point p) const;
    // Distance from the segment [a,b] to the polygon boundary.
    double clearance(Point a, Point b) const;
};

// Validates the ring and returns it as an Environment in counterclockwise
// order.  Throws InvalidEnvironment for fewer than three vertices, repeated
// consecutive vertices, self-intersection or zero area.
Environment make_environment(std::vector<Point> vertices);

Environment transformed(const Environment& env, double angle, Point shift);

}  // namespace visrdv
