#include "visrdv/geometry/convex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

bool ConvexRegion::contains(Point p, double tol) const {
    size_t n = vertices.size();
    if (n == 0) return false;
    if (n == 1) return dist(p, vertices[0]) <= tol;
    if (n == 2) return point_segment_distance(p, vertices[0], vertices[1]) <= tol;
    for (size_t i = 0; i < n; ++i) {
        Point a = vertices[i], b = vertices[(i + 1) % n];
        double l = dist(a, b);
        if (l == 0.0) continue;
        if (orient(a, b, p) / l < -tol) return false;
    }
    return true;
}

double ConvexRegion::perimeter() const { return visrdv::perimeter(vertices); }

double ConvexRegion::area() const { return vertices.size() < 3 ? 0.0 : signed_area(vertices); }

double ConvexRegion::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j) d = std::max(d, dist(vertices[i], vertices[j]));
    return d;
}

ConvexRegion convex_hull(const std::vector<Point>& input, double tol) {
    if (input.empty()) throw std::invalid_argument("convex hull of an empty set");
    std::vector<Point> pts = input;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return {pts};
    // A turn counts only when the middle point is off the chord by more than tol.
    auto left_turn = [tol](Point a, Point b, Point c) {
        double l = dist(a, c);
        return l > 0.0 && orient(a, b, c) / l > tol;
    };
    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && !left_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && dist(hull[0], hull[1]) <= tol) hull.resize(1);
    if (hull.size() >= 3 && std::abs(signed_area(hull)) <= 0.0) {
        // Fully collinear input collapses to its extreme points.
        hull = {pts.front(), pts.back()};
    }
    return {hull};
}

bool is_convex(const std::vector<Point>& ring, double tol) {
    size_t n = ring.size();
    if (n < 3) return true;
    for (size_t i = 0; i < n; ++i) {
        Point a = ring[(i + n - 1) % n], b = ring[i], c = ring[(i + 1) % n];
        double l = dist(a, c);
        if (l == 0.0) continue;
        if (orient(a, b, c) / l < -tol) return false;
    }
    return true;
}

std::optional<ConvexRegion> clip_halfplane(const ConvexRegion& region, const HalfPlane& h, double tol) {
    const auto& v = region.vertices;
    size_t n = v.size();
    if (n == 0) return std::nullopt;
    if (n == 1) {
        if (h.contains(v[0], tol)) return region;
        return std::nullopt;
    }
    if (std::all_of(v.begin(), v.end(), [&](Point p) { return h.signed_distance(p) >= -tol; })) return region;
    std::vector<Point> out;
    out.reserve(n + 2);
    for (size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        double da = h.signed_distance(a), db = h.signed_distance(b);
        bool ina = da >= -tol, inb = db >= -tol;
        if (ina) out.push_back(a);
        if (ina != inb && std::abs(da - db) > 0.0) {
            double t = da / (da - db);
            if (t > 0.0 && t < 1.0) out.push_back(a + (b - a) * t);
        }
    }
    if (out.empty()) return std::nullopt;
    return convex_hull(out, 0.0);
}

namespace {

std::vector<HalfPlane> bounding_halfplanes(const ConvexRegion& r) {
    std::vector<HalfPlane> hs;
    const auto& v = r.vertices;
    size_t n = v.size();
    if (n == 2) {
        Point d = normalized(v[1] - v[0]);
        hs.push_back({v[0], left_normal(d)});
        hs.push_back({v[0], -left_normal(d)});
        hs.push_back({v[0], d});
        hs.push_back({v[1], -d});
        return hs;
    }
    for (size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        if (a == b) continue;
        hs.push_back({a, left_normal(normalized(b - a))});
    }
    return hs;
}

}  // namespace

std::optional<ConvexRegion> intersect_convex(const ConvexRegion& a, const ConvexRegion& b, double tol) {
    if (a.vertices.empty() || b.vertices.empty()) return std::nullopt;
    if (b.vertices.size() == 1) {
        if (a.contains(b.vertices[0], tol)) return b;
        return std::nullopt;
    }
    if (a.vertices.size() == 1) {
        if (b.contains(a.vertices[0], tol)) return a;
        return std::nullopt;
    }
    const ConvexRegion& subject = a.vertices.size() >= b.vertices.size() || b.vertices.size() < 3 ? a : b;
    const ConvexRegion& clipper = &subject == &a ? b : a;
    std::optional<ConvexRegion> cur = subject;
    for (const HalfPlane& h : bounding_halfplanes(clipper)) {
        cur = clip_halfplane(*cur, h, tol);
        if (!cur) return std::nullopt;
    }
    return cur;
}

ConvexRegion disk_polygon(Point center, double radius, int sides, double phase) {
    ConvexRegion r;
    r.vertices.reserve(sides);
    for (int k = 0; k < sides; ++k) r.vertices.push_back(center + unit(phase + 2.0 * kPi * k / sides) * radius);
    return r;
}

double distance_to_convex(Point p, const ConvexRegion& region) {
    if (region.contains(p, 0.0)) return 0.0;
    const auto& v = region.vertices;
    if (v.size() == 1) return dist(p, v[0]);
    return distance_to_boundary(v, p);
}

double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
    double h = 0.0;
    for (const Point& p : a.vertices) h = std::max(h, distance_to_convex(p, b));
    for (const Point& p : b.vertices) h = std::max(h, distance_to_convex(p, a));
    return h;
}

namespace {

Circle circle_two(Point a, Point b) { return {(a + b) * 0.5, 0.5 * dist(a, b)}; }

Circle circle_three(Point a, Point b, Point c) {
    Point ab = b - a, ac = c - a;
    double d = 2.0 * cross(ab, ac);
    if (std::abs(d) <= 1e-300) {
        Circle best = circle_two(a, b);
        for (Circle cand : {circle_two(a, c), circle_two(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    double b2 = norm2(ab), c2 = norm2(ac);
    Point off{(ac.y * b2 - ab.y * c2) / d, (ab.x * c2 - ac.x * b2) / d};
    Point center = a + off;
    double r = std::max({dist(center, a), dist(center, b), dist(center, c)});
    return {center, r};
}

}  // namespace

Circle min_enclosing_circle(const std::vector<Point>& input) {
    if (input.empty()) throw std::invalid_argument("enclosing circle of an empty set");
    std::vector<Point> pts = input;
    // Fixed-seed shuffle keeps the expected running time linear.
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    for (size_t i = pts.size(); i > 1; --i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        size_t j = static_cast<size_t>((state >> 33) % i);
        std::swap(pts[i - 1], pts[j]);
    }
    double slack = 1e-12 * std::max(1.0, bounding_box(pts).diameter());
    auto inside = [slack](const Circle& c, Point p) { return dist(c.center, p) <= c.radius + slack; };
    Circle c{pts[0], 0.0};
    for (size_t i = 1; i < pts.size(); ++i) {
        if (inside(c, pts[i])) continue;
        c = {pts[i], 0.0};
        for (size_t j = 0; j < i; ++j) {
            if (inside(c, pts[j])) continue;
            c = circle_two(pts[i], pts[j]);
            for (size_t k = 0; k < j; ++k) {
                if (inside(c, pts[k])) continue;
                c = circle_three(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

Point circumcenter(const ConvexRegion& region) { return min_enclosing_circle(region.vertices).center; }

}  // namespace visrdv
