#include "visrdv/constraints/constraint_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "visrdv/geometry/primitives.hpp"
#include "visrdv/geometry/visibility.hpp"

namespace visrdv {

Point nearest_concavity_point(const StrictConcavity& c, Point a, Point b) { return c.closest_point_to_segment(a, b); }

HalfPlane internal_tangent_halfplane(const StrictConcavity& c, Point v) { return {v, normalized(v - c.center)}; }

namespace {

// Reflex corners of a counterclockwise ring, by index.
std::vector<int> dents(const TaggedPolygon& poly, double tol) {
    std::vector<int> out;
    int n = poly.size();
    for (int k = 0; k < n; ++k) {
        Point a = poly.at(k - 1), b = poly.points[k], c = poly.at(k + 1);
        double l = dist(a, c);
        if (l > 0.0 && orient(a, b, c) / l < -tol) out.push_back(k);
    }
    return out;
}

// Normal of a separating line at corner k of the ring, close to `want`.
Point corner_normal(const TaggedPolygon& poly, int k, Point want, Point pi, Point pj, double tol) {
    Point a = poly.at(k - 1), v = poly.points[k], b = poly.at(k + 1);
    Point n_in = left_normal(normalized(v - a)), n_out = left_normal(normalized(b - v));
    if (norm(want) == 0.0) return normalized(n_in + n_out);
    // Directions between n_in and n_out (going clockwise) support the dent.
    double lo = angle_of(n_out), span = wrap_two_pi(angle_of(n_in) - lo);
    double off = wrap_two_pi(angle_of(want) - lo);
    if (off <= span) return want;
    double to_lo = std::min(off, 2.0 * kPi - off);
    double to_hi = std::min(std::abs(off - span), 2.0 * kPi - std::abs(off - span));
    Point clamped = to_lo <= to_hi ? n_out : n_in;
    HalfPlane h{v, clamped};
    if (h.contains(pi, tol) && h.contains(pj, tol)) return clamped;
    return want;
}

}  // namespace

ConstraintSet constraint_set(const ContractedRegion& region, Point pi, Point pj, double r, const ConstraintOptions& opts,
                             const TaggedPolygon* vis_i) {
    const double tol = region.tolerance();
    if (opts.disk_sides < 4 || opts.disk_sides % 2 != 0) throw std::invalid_argument("disk polygon needs an even side count");
    if (!(r > 0.0)) throw PreconditionError("sensing range must be positive");
    if (dist(pi, pj) > r + tol) throw PreconditionError("robots are farther apart than the sensing range");
    if (!region.contains_approx(pi) || !region.contains_approx(pj)) throw PreconditionError("robot outside the region");
    if (!region.sees(pi, pj)) throw PreconditionError("robots do not see each other");

    TaggedPolygon vis = vis_i ? *vis_i : visibility_region(region, pi);
    Point mid = (pi + pj) * 0.5;
    double phase = dist(pi, pj) > tol ? angle_of(pi - mid) : 0.0;
    ConvexRegion disk = disk_polygon(mid, 0.5 * r, opts.disk_sides, phase);
    TaggedPolygon c = clip_to_convex(vis, disk, {EdgeKind::disk, 0, 0.0}, tol);

    ConstraintSet out;
    if (c.empty()) {
        out.region = convex_hull({pi, pj}, tol);
        return out;
    }
    std::vector<bool> done(region.concavities().size(), false);
    const int limit = static_cast<int>(region.concavities().size());
    while (true) {
        int best_edge = -1;
        ClosestPair best_pair;
        EdgeSource best_src;
        for (int k = 0; k < c.size(); ++k) {
            const EdgeSource& s = c.sources[k];
            if (s.kind != EdgeKind::arc || done[s.id]) continue;
            Point a = c.points[k], b = c.at(k + 1);
            if (dist(a, b) <= tol) continue;
            ClosestPair cp = segment_segment_closest(a, b, pi, pj);
            bool better = best_edge < 0;
            if (!better) {
                if (cp.distance < best_pair.distance - tol) better = true;
                else if (cp.distance <= best_pair.distance + tol) {
                    better = s.id < best_src.id || (s.id == best_src.id && s.angle < best_src.angle);
                }
            }
            if (better) {
                best_edge = k;
                best_pair = cp;
                best_src = s;
            }
        }
        if (best_edge < 0) break;
        if (out.iterations >= limit) throw std::logic_error("constraint generator exceeded its iteration bound");
        Point v = best_pair.on_first;
        Point n = best_pair.distance > tol ? normalized(best_pair.on_second - v)
                                           : left_normal(normalized(c.at(best_edge + 1) - c.points[best_edge]));
        HalfPlane h{v, n};
        c = clip_tagged(c, h, {EdgeKind::cut, out.iterations, 0.0}, tol);
        out.cuts.push_back({best_src.id, v, h});
        done[best_src.id] = true;
        ++out.iterations;
        if (c.empty()) break;
    }

    // Arc polylines can leave shallow dents when the touch point sits at the
    // end of a clipped piece; shave them off the same way.
    for (int guard = 0; !c.empty() && guard < 4 * (c.size() + 4); ++guard) {
        auto ds = dents(c, tol);
        if (ds.empty()) break;
        int pick = ds[0];
        double pick_d = std::numeric_limits<double>::infinity();
        for (int k : ds) {
            double d = point_segment_distance(c.points[k], pi, pj);
            if (d < pick_d) {
                pick_d = d;
                pick = k;
            }
        }
        Point v = c.points[pick];
        Point s = closest_on_segment(v, pi, pj);
        Point n = corner_normal(c, pick, normalized(s - v), pi, pj, tol);
        HalfPlane h{v, n};
        c = clip_tagged(c, h, {EdgeKind::cut, out.iterations + out.cleanup_clips, 0.0}, tol);
        out.cuts.push_back({-1, v, h});
        ++out.cleanup_clips;
    }

    if (c.empty()) {
        out.region = convex_hull({pi, pj}, tol);
        return out;
    }
    out.region = convex_hull(c.points, tol);
    double defect = 0.0;
    for (const Point& p : c.points) defect = std::max(defect, distance_to_boundary(out.region.vertices, p));
    out.convexity_defect = defect;
    return out;
}

ConvexRegion combined_constraint_set(int i, const std::vector<Point>& pts, const std::vector<int>& neighbors,
                                     const ContractedRegion& region, double r, const ConstraintOptions& opts,
                                     const TaggedPolygon* vis_i) {
    const double tol = region.tolerance();
    TaggedPolygon vis = vis_i ? *vis_i : visibility_region(region, pts[i]);
    std::optional<ConvexRegion> acc;
    for (int j : neighbors) {
        if (j == i) continue;
        ConvexRegion cj = constraint_set(region, pts[i], pts[j], r, opts, &vis).region;
        acc = acc ? intersect_convex(*acc, cj, tol) : std::optional<ConvexRegion>(cj);
        if (!acc) return convex_hull({pts[i]});
    }
    if (!acc) return constraint_set(region, pts[i], pts[i], r, opts, &vis).region;
    return *acc;
}

}  // namespace visrdv
