#include "visrdv/geometry/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace visrdv {

BoundingBox bounding_box(const std::vector<Point>& pts) {
    BoundingBox b;
    if (pts.empty()) return b;
    b.lo = b.hi = pts[0];
    for (const Point& p : pts) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

Point closest_on_segment(Point p, Point a, Point b) {
    Point d = b - a;
    double l2 = norm2(d);
    if (l2 == 0.0) return a;
    double t = std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
    return a + d * t;
}

double point_segment_distance(Point p, Point a, Point b) {
    return dist(p, closest_on_segment(p, a, b));
}

ClosestPair segment_segment_closest(Point a, Point b, Point c, Point d) {
    if (segments_properly_cross(a, b, c, d, 0.0)) {
        auto hit = segment_intersection(a, b, c, d, 0.0);
        if (hit) return {hit->p, hit->p, 0.0};
    }
    ClosestPair best;
    best.distance = std::numeric_limits<double>::infinity();
    auto consider = [&](Point p, Point q) {
        double dd = dist(p, q);
        if (dd < best.distance) best = {p, q, dd};
    };
    consider(a, closest_on_segment(a, c, d));
    consider(b, closest_on_segment(b, c, d));
    consider(closest_on_segment(c, a, b), c);
    consider(closest_on_segment(d, a, b), d);
    return best;
}

double segment_segment_distance(Point a, Point b, Point c, Point d) {
    return segment_segment_closest(a, b, c, d).distance;
}

std::optional<SegmentHit> segment_intersection(Point a, Point b, Point c, Point d, double tol) {
    Point r = b - a, s = d - c;
    double den = cross(r, s);
    double lr = norm(r), ls = norm(s);
    if (lr == 0.0 || ls == 0.0) return std::nullopt;
    if (std::abs(den) <= 1e-14 * lr * ls) return std::nullopt;
    double t = cross(c - a, s) / den;
    double u = cross(c - a, r) / den;
    double tt = tol / lr, tu = tol / ls;
    if (t < -tt || t > 1.0 + tt || u < -tu || u > 1.0 + tu) return std::nullopt;
    return SegmentHit{a + r * t, t, u};
}

bool segments_properly_cross(Point a, Point b, Point c, Point d, double tol) {
    double lab = dist(a, b), lcd = dist(c, d);
    if (lab == 0.0 || lcd == 0.0) return false;
    double o1 = orient(a, b, c) / lab, o2 = orient(a, b, d) / lab;
    double o3 = orient(c, d, a) / lcd, o4 = orient(c, d, b) / lcd;
    bool s12 = (o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol);
    bool s34 = (o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol);
    return s12 && s34;
}

double signed_area(const std::vector<Point>& poly) {
    double s = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * s;
}

double perimeter(const std::vector<Point>& poly) {
    double s = 0.0;
    size_t n = poly.size();
    if (n < 2) return 0.0;
    for (size_t i = 0; i < n; ++i) s += dist(poly[i], poly[(i + 1) % n]);
    return s;
}

Location locate_point(const std::vector<Point>& poly, Point p, double tol) {
    size_t n = poly.size();
    if (n == 0) return Location::outside;
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = poly[j];
        const Point& b = poly[i];
        bool near = p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol &&
                    p.y >= std::min(a.y, b.y) - tol && p.y <= std::max(a.y, b.y) + tol;
        if (near && point_segment_distance(p, a, b) <= tol) return Location::boundary;
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside ? Location::inside : Location::outside;
}

double distance_to_boundary(const std::vector<Point>& poly, Point p) {
    double best = std::numeric_limits<double>::infinity();
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
    return best;
}

Point closest_on_boundary(const std::vector<Point>& poly, Point p) {
    double best = std::numeric_limits<double>::infinity();
    Point out = p;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Point q = closest_on_segment(p, poly[i], poly[(i + 1) % n]);
        double d = dist(p, q);
        if (d < best) {
            best = d;
            out = q;
        }
    }
    return out;
}

bool segment_in_polygon(const std::vector<Point>& poly, Point a, Point b, double tol) {
    size_t n = poly.size();
    double len = dist(a, b);
    if (len <= tol) return inside_or_on(poly, a, tol);
    std::vector<double> cuts{0.0, 1.0};
    Point d = b - a;
    double x0 = std::min(a.x, b.x) - tol, x1 = std::max(a.x, b.x) + tol;
    double y0 = std::min(a.y, b.y) - tol, y1 = std::max(a.y, b.y) + tol;
    for (size_t i = 0; i < n; ++i) {
        const Point& c = poly[i];
        const Point& e = poly[i + 1 == n ? 0 : i + 1];
        if ((c.x < x0 && e.x < x0) || (c.x > x1 && e.x > x1) || (c.y < y0 && e.y < y0) || (c.y > y1 && e.y > y1)) continue;
        if (segments_properly_cross(a, b, c, e, tol)) return false;
        // Parameters where the boundary touches the segment.
        for (const Point& v : {c, e}) {
            if (point_segment_distance(v, a, b) <= tol) cuts.push_back(std::clamp(dot(v - a, d) / (len * len), 0.0, 1.0));
        }
        if (point_segment_distance(a, c, e) <= tol) cuts.push_back(0.0);
        if (point_segment_distance(b, c, e) <= tol) cuts.push_back(1.0);
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        if ((cuts[k + 1] - cuts[k]) * len <= tol) continue;
        Point m = a + d * (0.5 * (cuts[k] + cuts[k + 1]));
        if (locate_point(poly, m, tol) == Location::outside) return false;
    }
    return inside_or_on(poly, a, tol) && inside_or_on(poly, b, tol);
}

std::optional<std::pair<int, int>> find_self_intersection(const std::vector<Point>& poly, double tol) {
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        Point a = poly[i], b = poly[(i + 1) % n];
        for (int j = i + 1; j < n; ++j) {
            Point c = poly[j], d = poly[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Adjacent edges only conflict when they fold back onto each other.
                Point shared = (j == i + 1) ? b : a;
                Point other1 = (j == i + 1) ? a : b;
                Point other2 = (j == i + 1) ? d : c;
                Point u = other1 - shared, v = other2 - shared;
                double lu = norm(u), lv = norm(v);
                if (lu == 0.0 || lv == 0.0) return std::make_pair(i, j);
                if (std::abs(cross(u, v)) <= tol * std::max(lu, lv) && dot(u, v) > 0.0) return std::make_pair(i, j);
                continue;
            }
            if (segment_segment_distance(a, b, c, d) <= tol) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::pair<double, Point>>> mutual_cuts(const std::vector<std::pair<Point, Point>>& segs,
                                                               double tol) {
    size_t m = segs.size();
    std::vector<std::vector<std::pair<double, Point>>> cuts(m);
    std::vector<double> len(m);
    for (size_t i = 0; i < m; ++i) {
        len[i] = dist(segs[i].first, segs[i].second);
        cuts[i].push_back({0.0, segs[i].first});
        cuts[i].push_back({1.0, segs[i].second});
    }
    auto param = [&](size_t k, Point q) {
        if (len[k] == 0.0) return 0.0;
        Point d = segs[k].second - segs[k].first;
        return std::clamp(dot(q - segs[k].first, d) / (len[k] * len[k]), 0.0, 1.0);
    };
    // Sweep over x so only segments with overlapping boxes are compared.
    std::vector<size_t> order(m);
    std::vector<BoundingBox> box(m);
    for (size_t i = 0; i < m; ++i) {
        order[i] = i;
        box[i] = bounding_box({segs[i].first, segs[i].second});
    }
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return box[x].lo.x < box[y].lo.x; });
    for (size_t oi = 0; oi < m; ++oi) {
        size_t i = order[oi];
        auto [a, b] = segs[i];
        if (len[i] <= tol) continue;
        for (size_t oj = oi + 1; oj < m && box[order[oj]].lo.x <= box[i].hi.x + tol; ++oj) {
            size_t j = order[oj];
            if (len[j] <= tol) continue;
            if (box[j].lo.y > box[i].hi.y + tol || box[i].lo.y > box[j].hi.y + tol) continue;
            auto [c, d] = segs[j];
            bool touched = false;
            for (Point q : {c, d})
                if (point_segment_distance(q, a, b) <= tol) {
                    cuts[i].push_back({param(i, q), q});
                    touched = true;
                }
            for (Point q : {a, b})
                if (point_segment_distance(q, c, d) <= tol) {
                    cuts[j].push_back({param(j, q), q});
                    touched = true;
                }
            if (touched || !segments_properly_cross(a, b, c, d, tol)) continue;
            if (auto hit = segment_intersection(a, b, c, d, 0.0)) {
                cuts[i].push_back({hit->t, hit->p});
                cuts[j].push_back({hit->u, hit->p});
            }
        }
    }
    for (auto& cs : cuts)
        std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return cuts;
}

std::vector<Point> dedupe_ring(const std::vector<Point>& poly, double tol) {
    std::vector<Point> out;
    for (const Point& p : poly) {
        if (out.empty() || dist(out.back(), p) > tol) out.push_back(p);
    }
    while (out.size() > 1 && dist(out.front(), out.back()) <= tol) out.pop_back();
    return out;
}

}  // namespace visrdv
