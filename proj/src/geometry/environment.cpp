#include "visrdv/geometry/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

double Environment::scale() const { return bounding_box(vertices).diameter(); }

std::vector<int> Environment::reflex_vertices() const {
    std::vector<int> out;
    int n = size();
    for (int i = 0; i < n; ++i) {
        Point a = vertex(i - 1), b = vertex(i), c = vertex(i + 1);
        double l = dist(a, b) * dist(b, c);
        if (orient(a, b, c) < -1e-12 * l) out.push_back(i);
    }
    return out;
}

bool Environment::contains(Point p, double tol) const { return inside_or_on(vertices, p, tol); }

double Environment::clearance(Point p) const { return distance_to_boundary(vertices, p); }

double Environment::clearance(Point a, Point b) const {
    double best = std::numeric_limits<double>::infinity();
    int n = size();
    for (int i = 0; i < n; ++i) best = std::min(best, segment_segment_distance(a, b, vertex(i), vertex(i + 1)));
    return best;
}

Environment make_environment(std::vector<Point> vertices) {
    if (vertices.size() < 3) throw InvalidEnvironment("environment needs at least three vertices");
    for (const Point& p : vertices) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidEnvironment("environment has a non-finite coordinate");
    }
    double scale = bounding_box(vertices).diameter();
    double tol = 1e-12 * std::max(scale, 1e-300);
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        if (dist(vertices[i], vertices[(i + 1) % n]) <= tol) {
            throw InvalidEnvironment("environment repeats vertex " + std::to_string((i + 1) % n));
        }
    }
    double area = signed_area(vertices);
    if (std::abs(area) <= 1e-12 * scale * scale) throw InvalidEnvironment("environment has zero area");
    if (auto hit = find_self_intersection(vertices, tol)) {
        throw InvalidEnvironment("environment self-intersects at edges " + std::to_string(hit->first) + " and " +
                                 std::to_string(hit->second));
    }
    if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
    return Environment{std::move(vertices)};
}

Environment transformed(const Environment& env, double angle, Point shift) {
    Environment out = env;
    for (Point& p : out.vertices) p = rotate(p, angle) + shift;
    return out;
}

}  // namespace visrdv
