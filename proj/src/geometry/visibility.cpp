#include "visrdv/geometry/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

namespace {

Point nudge_inside(const TaggedPolygon& poly, Point p, double tol) {
    Point dir{0.0, 0.0};
    int n = poly.size();
    for (int k = 0; k < n; ++k) {
        Point a = poly.points[k], b = poly.at(k + 1);
        if (point_segment_distance(p, a, b) <= 4.0 * tol) dir = dir + left_normal(normalized(b - a));
    }
    dir = normalized(dir);
    if (norm(dir) == 0.0) return p;
    for (double k : {10.0, 100.0, 1000.0}) {
        Point cand = p + dir * (k * tol);
        if (locate_point(poly.points, cand, tol) == Location::inside) return cand;
    }
    return p;
}

}  // namespace

TaggedPolygon visibility_polygon(const TaggedPolygon& poly, Point p, double tol) {
    const int n = poly.size();
    if (n < 3) return {};
    if (distance_to_boundary(poly.points, p) <= tol) p = nudge_inside(poly, p, tol);

    std::vector<double> ang(n);
    for (int k = 0; k < n; ++k) ang[k] = angle_of(poly.points[k] - p);

    struct Span {
        int lo = -1;
        int hi = -1;
        double len = 0.0;
    };
    std::vector<Span> spans(n);
    for (int k = 0; k < n; ++k) {
        int k1 = (k + 1) % n;
        Point a = poly.points[k] - p, b = poly.points[k1] - p;
        double c = cross(a, b);
        if (std::abs(c) <= 1e-15 * norm(a) * norm(b)) continue;
        Span s;
        s.lo = c > 0.0 ? k : k1;
        s.hi = c > 0.0 ? k1 : k;
        s.len = wrap_two_pi(ang[s.hi] - ang[s.lo]);
        spans[k] = s;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return ang[x] < ang[y] || (ang[x] == ang[y] && x < y); });

    struct Hit {
        double t = std::numeric_limits<double>::infinity();
        int edge = -1;
        Point at;
    };
    auto hit_at = [&](double theta, bool before) {
        Hit best;
        Point u = unit(theta);
        for (int k = 0; k < n; ++k) {
            const Span& s = spans[k];
            if (s.lo < 0) continue;
            double off = wrap_two_pi(theta - ang[s.lo]);
            bool in = before ? (off > 0.0 && off <= s.len) : (off >= 0.0 && off < s.len);
            if (!in) continue;
            Point pt;
            double t;
            if (theta == ang[s.lo]) {
                pt = poly.points[s.lo];
                t = dist(pt, p);
            } else if (theta == ang[s.hi]) {
                pt = poly.points[s.hi];
                t = dist(pt, p);
            } else {
                Point a = poly.points[k], e = poly.at(k + 1) - a;
                double den = cross(u, e);
                if (den == 0.0) continue;
                t = cross(a - p, e) / den;
                pt = p + u * t;
            }
            if (t < best.t) best = {t, k, pt};
        }
        return best;
    };

    auto radial_source = [&](Point a, Point b) {
        for (int k = 0; k < n; ++k) {
            if (spans[k].lo >= 0) continue;
            Point c = poly.points[k], d = poly.at(k + 1);
            if (point_segment_distance(a, c, d) <= tol && point_segment_distance(b, c, d) <= tol) return poly.sources[k];
        }
        return EdgeSource{EdgeKind::window, -1, 0.0};
    };

    TaggedPolygon out;
    for (size_t q = 0; q < order.size(); ++q) {
        double theta = ang[order[q]];
        if (q > 0 && ang[order[q - 1]] == theta) continue;
        Hit before = hit_at(theta, true);
        Hit after = hit_at(theta, false);
        if (before.edge < 0 || after.edge < 0) continue;
        if (dist(before.at, after.at) > tol) {
            out.points.push_back(before.at);
            out.sources.push_back(radial_source(before.at, after.at));
        }
        out.points.push_back(after.at);
        out.sources.push_back(poly.sources[after.edge]);
    }
    return merged_collinear(cleaned(out, tol), tol);
}

TaggedPolygon visibility_region(const ContractedRegion& region, Point p) {
    if (!region.contains_approx(p)) throw PreconditionError("observer is outside the contracted region");
    return visibility_polygon(region.polygon(), p, region.tolerance());
}

TaggedPolygon clip_to_convex(const TaggedPolygon& poly, const ConvexRegion& convex, EdgeSource tag, double tol) {
    TaggedPolygon out = poly, scratch;
    const auto& v = convex.vertices;
    int m = static_cast<int>(v.size());
    for (int k = 0; k < m && !out.empty(); ++k) {
        Point a = v[k], b = v[(k + 1) % m];
        if (a == b) continue;
        EdgeSource t = tag;
        if (tag.kind == EdgeKind::disk) t.id = k;
        HalfPlane h{a, left_normal(normalized(b - a))};
        if (std::all_of(out.points.begin(), out.points.end(), [&](Point p) { return h.signed_distance(p) >= -tol; }))
            continue;
        clip_tagged_into(out, h, t, tol, scratch);
        std::swap(out, scratch);
    }
    return out;
}

TaggedPolygon sensing_region(const ContractedRegion& region, Point p, double r, int sides) {
    TaggedPolygon vis = visibility_region(region, p);
    return clip_to_convex(vis, disk_polygon(p, r, sides, 0.0), {EdgeKind::disk, 0, 0.0}, region.tolerance());
}

}  // namespace visrdv
