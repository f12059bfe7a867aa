#include "visrdv/geometry/tagged_polygon.hpp"

#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

void clip_tagged_into(const TaggedPolygon& poly, const HalfPlane& h, EdgeSource tag, double tol, TaggedPolygon& out) {
    out.points.clear();
    out.sources.clear();
    int n = poly.size();
    // Zero-length edges are dropped as they appear; the surviving vertex
    // keeps the later source, as in cleaned().
    auto emit = [&](Point p, const EdgeSource& src) {
        if (!out.points.empty() && dist(out.points.back(), p) <= tol) {
            out.sources.back() = src;
            return;
        }
        out.points.push_back(p);
        out.sources.push_back(src);
    };
    double da = n > 0 ? h.signed_distance(poly.points[0]) : 0.0;
    for (int k = 0; k < n; ++k) {
        Point a = poly.points[k], b = poly.points[k + 1 == n ? 0 : k + 1];
        double db = h.signed_distance(b);
        bool ina = da >= -tol, inb = db >= -tol;
        if (ina) emit(a, poly.sources[k]);
        if (ina && !inb) {
            emit(a + (b - a) * (da / (da - db)), tag);
        } else if (!ina && inb) {
            emit(a + (b - a) * (da / (da - db)), poly.sources[k]);
        }
        da = db;
    }
    while (out.points.size() > 1 && dist(out.points.front(), out.points.back()) <= tol) {
        out.points.pop_back();
        out.sources.pop_back();
    }
    if (out.points.size() < 3) {
        out.points.clear();
        out.sources.clear();
    }
}

TaggedPolygon clip_tagged(const TaggedPolygon& poly, const HalfPlane& h, EdgeSource tag, double tol) {
    TaggedPolygon out;
    out.points.reserve(poly.size() + 4);
    out.sources.reserve(poly.size() + 4);
    clip_tagged_into(poly, h, tag, tol, out);
    return out;
}

TaggedPolygon cleaned(const TaggedPolygon& poly, double tol) {
    TaggedPolygon out;
    int n = poly.size();
    out.points.reserve(n);
    out.sources.reserve(n);
    for (int k = 0; k < n; ++k) {
        Point a = poly.points[k];
        if (!out.points.empty() && dist(out.points.back(), a) <= tol) {
            // Previous edge has zero length; the surviving vertex keeps the later source.
            out.sources.back() = poly.sources[k];
            continue;
        }
        out.points.push_back(a);
        out.sources.push_back(poly.sources[k]);
    }
    while (out.points.size() > 1 && dist(out.points.front(), out.points.back()) <= tol) {
        out.points.pop_back();
        out.sources.pop_back();
    }
    if (out.points.size() < 3) return {};
    return out;
}

TaggedPolygon merged_collinear(const TaggedPolygon& poly, double tol) {
    int n = poly.size();
    if (n < 4) return poly;
    std::vector<bool> drop(n, false);
    for (int k = 0; k < n; ++k) {
        int prev = (k + n - 1) % n;
        if (!same_edge_source(poly.sources[prev], poly.sources[k])) continue;
        Point a = poly.points[prev], b = poly.points[k], c = poly.at(k + 1);
        if (point_segment_distance(b, a, c) <= tol) drop[k] = true;
    }
    TaggedPolygon out;
    for (int k = 0; k < n; ++k) {
        if (drop[k]) continue;
        out.points.push_back(poly.points[k]);
        out.sources.push_back(poly.sources[k]);
    }
    if (out.points.size() < 3) return poly;
    return out;
}

}  // namespace visrdv
