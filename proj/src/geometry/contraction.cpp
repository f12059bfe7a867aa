#include "visrdv/geometry/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "visrdv/geometry/geodesic.hpp"
#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

bool StrictConcavity::covers_angle(double a, double slack) const {
    double off = wrap_two_pi(a - start_angle);
    return off <= sweep() + slack || off >= 2.0 * kPi - slack;
}

Point StrictConcavity::closest_point_to_segment(Point a, Point b) const {
    Point s0 = closest_on_segment(center, a, b);
    Point ps = center + unit(start_angle) * radius;
    Point pe = center + unit(end_angle) * radius;
    if (dist(s0, center) > 0.0) {
        double th = angle_of(s0 - center);
        if (covers_angle(th)) return center + unit(th) * radius;
    }
    return point_segment_distance(ps, a, b) <= point_segment_distance(pe, a, b) ? ps : pe;
}

namespace {

struct RawSeg {
    Point a;
    Point b;
    EdgeSource src;
};

struct Piece {
    Point a;
    Point b;
    int raw = 0;
    EdgeSource src;
};

// Circumscribed polygon of a blocked disk, given by its tangent directions.
struct CornerGuard {
    Point center;
    double outer = 0.0;
    std::vector<Point> dirs;
};

bool same_source(const EdgeSource& a, const EdgeSource& b) { return a.kind == b.kind && a.id == b.id; }

}  // namespace

ContractedRegion::ContractedRegion(Environment env, double epsilon, ContractionOptions opts)
    : env_(std::move(env)), epsilon_(epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidContraction(InvalidContraction::Reason::bad_epsilon, "contraction radius must be positive");
    scale_ = env_.scale();
    tol_ = 1e-9 * scale_;
    double dev = opts.chord_deviation > 0.0 ? opts.chord_deviation : 1e-3 * scale_;
    // The 1% cap keeps successive regions nested while the radius shrinks.
    chord_dev_ = std::min(dev, 0.01 * epsilon);
    const double eps = epsilon;
    const int n = env_.size();

    std::vector<Point> d(n), nn(n);
    for (int i = 0; i < n; ++i) {
        d[i] = normalized(env_.vertex(i + 1) - env_.vertex(i));
        nn[i] = left_normal(d[i]);
    }
    std::vector<bool> reflex(n, false);
    for (int k = 0; k < n; ++k) {
        reflex[k] = cross(d[(k + n - 1) % n], d[k]) < -1e-12;
        if (reflex[k]) ++reflex_count_;
    }
    auto miter = [&](int k) {
        Point n1 = nn[(k + n - 1) % n], n2 = nn[k];
        if (std::abs(cross(d[(k + n - 1) % n], d[k])) < 1e-12) return env_.vertex(k) + n2 * eps;
        return env_.vertex(k) + (n1 + n2) * (eps / (1.0 + dot(n1, n2)));
    };

    std::vector<RawSeg> raw;
    std::vector<CornerGuard> guards;
    const double max_step = 2.0 * std::acos(eps / (eps + chord_dev_));
    for (int i = 0; i < n; ++i) {
        Point s = reflex[i] ? env_.vertex(i) + nn[i] * eps : miter(i);
        int k = (i + 1) % n;
        Point e = reflex[k] ? env_.vertex(k) + nn[i] * eps : miter(k);
        raw.push_back({s, e, {EdgeKind::wall, i, 0.0}});
        if (!reflex[k]) continue;
        Point c = env_.vertex(k);
        double phi0 = angle_of(nn[i]);
        double phi1 = angle_of(nn[k]);
        double sweep = wrap_two_pi(phi0 - phi1);
        int steps = std::max(1, static_cast<int>(std::ceil(sweep / max_step - 1e-12)));
        double delta = sweep / steps;
        double rho = eps / std::cos(0.5 * delta);
        Point prev = e;
        for (int j = 1; j <= steps; ++j) {
            Point w = c + unit(phi0 - (j - 0.5) * delta) * rho;
            raw.push_back({prev, w, {EdgeKind::arc, k, phi0 - (j - 1) * delta}});
            prev = w;
        }
        raw.push_back({prev, c + nn[k] * eps, {EdgeKind::arc, k, phi1}});
        CornerGuard g{c, rho, {}};
        int total = static_cast<int>(std::ceil(2.0 * kPi / delta - 1e-12));
        for (int j = 0; j < total; ++j) g.dirs.push_back(unit(phi0 - j * delta));
        guards.push_back(std::move(g));
    }

    // Split the raw offset curve at its self-intersections.
    const int m = static_cast<int>(raw.size());
    std::vector<std::vector<std::pair<double, Point>>> splits(m);
    for (int a = 0; a < m; ++a) {
        const RawSeg& A = raw[a];
        double la = dist(A.a, A.b);
        if (la <= tol_) continue;
        for (int b = a + 1; b < m; ++b) {
            const RawSeg& B = raw[b];
            double lb = dist(B.a, B.b);
            if (lb <= tol_) continue;
            bool next = b == a + 1;
            bool wrap = a == 0 && b == m - 1;
            if (auto hit = segment_intersection(A.a, A.b, B.a, B.b, tol_)) {
                bool a0 = hit->t * la <= tol_, a1 = (1.0 - hit->t) * la <= tol_;
                bool b0 = hit->u * lb <= tol_, b1 = (1.0 - hit->u) * lb <= tol_;
                if (next && a1 && b0) continue;
                if (wrap && a0 && b1) continue;
                Point p = hit->p;
                if (a0) p = A.a;
                else if (a1) p = A.b;
                else if (b0) p = B.a;
                else if (b1) p = B.b;
                splits[a].push_back({std::clamp(hit->t, 0.0, 1.0), p});
                splits[b].push_back({std::clamp(hit->u, 0.0, 1.0), p});
                continue;
            }
            Point da = (A.b - A.a) / la, db = (B.b - B.a) / lb;
            if (std::abs(cross(da, db)) > 1e-9) continue;
            if (std::abs(cross(da, B.a - A.a)) > tol_) continue;
            for (Point q : {B.a, B.b})
                if (point_segment_distance(q, A.a, A.b) <= tol_) splits[a].push_back({dot(q - A.a, da) / la, q});
            for (Point q : {A.a, A.b})
                if (point_segment_distance(q, B.a, B.b) <= tol_) splits[b].push_back({dot(q - B.a, db) / lb, q});
        }
    }

    std::vector<Piece> pieces;
    for (int s = 0; s < m; ++s) {
        auto cuts = splits[s];
        cuts.push_back({0.0, raw[s].a});
        cuts.push_back({1.0, raw[s].b});
        std::sort(cuts.begin(), cuts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            if (dist(cuts[k].second, cuts[k + 1].second) <= tol_) continue;
            pieces.push_back({cuts[k].second, cuts[k + 1].second, s, raw[s].src});
        }
    }

    // Keep pieces whose midpoint is not strictly inside a blocked band or corner.
    auto blocked = [&](Point p) {
        if (!env_.contains(p, tol_)) return true;
        for (int i = 0; i < n; ++i)
            if (point_segment_distance(p, env_.vertex(i), env_.vertex(i + 1)) < eps - tol_) return true;
        for (const CornerGuard& g : guards) {
            if (dist(p, g.center) >= g.outer) continue;
            double worst = -std::numeric_limits<double>::infinity();
            for (Point u : g.dirs) worst = std::max(worst, dot(p - g.center, u));
            if (worst < eps - tol_) return true;
        }
        return false;
    };
    std::vector<Piece> kept;
    for (const Piece& pc : pieces)
        if (!blocked((pc.a + pc.b) * 0.5)) kept.push_back(pc);

    // Chain the kept pieces into closed loops.
    std::vector<Point> nodes;
    auto node_of = [&](Point p) {
        for (size_t k = 0; k < nodes.size(); ++k)
            if (dist(nodes[k], p) <= 4.0 * tol_) return static_cast<int>(k);
        nodes.push_back(p);
        return static_cast<int>(nodes.size() - 1);
    };
    std::vector<int> from(kept.size()), to(kept.size());
    for (size_t k = 0; k < kept.size(); ++k) {
        from[k] = node_of(kept[k].a);
        to[k] = node_of(kept[k].b);
    }
    std::vector<std::vector<int>> outgoing(nodes.size());
    for (size_t k = 0; k < kept.size(); ++k)
        if (from[k] != to[k]) outgoing[from[k]].push_back(static_cast<int>(k));
    std::vector<bool> used(kept.size(), false);
    std::vector<std::vector<int>> loops;
    for (size_t s = 0; s < kept.size(); ++s) {
        if (used[s] || from[s] == to[s]) continue;
        std::vector<int> loop;
        int cur = static_cast<int>(s);
        bool closed = false;
        while (true) {
            used[cur] = true;
            loop.push_back(cur);
            Point back = kept[cur].a - kept[cur].b;
            int best = -1;
            double best_turn = std::numeric_limits<double>::infinity();
            for (int cand : outgoing[to[cur]]) {
                if (used[cand] && cand != static_cast<int>(s)) continue;
                double turn = wrap_two_pi(angle_of(back) - angle_of(kept[cand].b - kept[cand].a));
                if (turn == 0.0) turn = 2.0 * kPi;
                if (turn < best_turn) {
                    best_turn = turn;
                    best = cand;
                }
            }
            if (best < 0) break;
            if (best == static_cast<int>(s)) {
                closed = true;
                break;
            }
            cur = best;
        }
        if (closed) loops.push_back(std::move(loop));
    }

    int chosen = -1;
    int positive = 0;
    for (size_t l = 0; l < loops.size(); ++l) {
        std::vector<Point> ring;
        for (int k : loops[l]) ring.push_back(kept[k].a);
        if (signed_area(ring) > 1e-12 * scale_ * scale_) {
            ++positive;
            chosen = static_cast<int>(l);
        }
    }
    if (positive == 0) throw InvalidContraction(InvalidContraction::Reason::empty, "contracted region is empty");
    if (positive > 1)
        throw InvalidContraction(InvalidContraction::Reason::disconnected, "contracted region is disconnected");

    // Merge consecutive pieces of the same raw segment.
    const auto& loop = loops[chosen];
    int L = static_cast<int>(loop.size());
    int start = 0;
    for (int k = 0; k < L; ++k) {
        if (kept[loop[k]].raw != kept[loop[(k + L - 1) % L]].raw) {
            start = k;
            break;
        }
    }
    TaggedPolygon poly;
    for (int j = 0; j < L; ++j) {
        const Piece& pc = kept[loop[(start + j) % L]];
        if (j > 0 && pc.raw == kept[loop[(start + j - 1) % L]].raw) continue;
        poly.points.push_back(pc.a);
        poly.sources.push_back(pc.src);
    }
    poly = cleaned(poly, tol_);
    if (poly.empty()) throw InvalidContraction(InvalidContraction::Reason::empty, "contracted region is empty");

    // Rotate so that no run of arc edges wraps past index zero.
    int P = poly.size();
    int rot = 0;
    for (int k = 0; k < P; ++k) {
        const EdgeSource& cur = poly.sources[k];
        const EdgeSource& prev = poly.sources[(k + P - 1) % P];
        if (cur.kind != EdgeKind::arc || !same_source(cur, prev)) {
            rot = k;
            break;
        }
    }
    std::rotate(poly.points.begin(), poly.points.begin() + rot, poly.points.end());
    std::rotate(poly.sources.begin(), poly.sources.begin() + rot, poly.sources.end());

    auto refine = [&](Point approx, const EdgeSource& other, Point c) -> Point {
        if (other.kind == EdgeKind::wall) {
            Point q = env_.vertex(other.id) + nn[other.id] * eps;
            Point dir = d[other.id];
            Point f = q - c;
            double b = dot(f, dir);
            double disc = std::max(0.0, b * b - (norm2(f) - eps * eps));
            double r = std::sqrt(disc);
            Point p1 = q + dir * (-b - r), p2 = q + dir * (-b + r);
            return dist(p1, approx) <= dist(p2, approx) ? p1 : p2;
        }
        if (other.kind == EdgeKind::arc) {
            Point c2 = env_.vertex(other.id);
            Point mid = (c + c2) * 0.5;
            double half = 0.5 * dist(c, c2);
            double h = std::sqrt(std::max(0.0, eps * eps - half * half));
            Point perp = left_normal(normalized(c2 - c)) * h;
            Point p1 = mid + perp, p2 = mid - perp;
            return dist(p1, approx) <= dist(p2, approx) ? p1 : p2;
        }
        return approx;
    };

    // Group edges into runs of one source: arcs become concavities.
    struct Run {
        int first = 0;
        int last = 0;
        EdgeSource src;
        Point a;
        Point b;
    };
    std::vector<Run> runs;
    for (int k = 0; k < P; ++k) {
        if (!runs.empty() && same_source(runs.back().src, poly.sources[k])) {
            runs.back().last = k;
            continue;
        }
        runs.push_back({k, k, poly.sources[k], poly.points[k], {}});
    }
    int R = static_cast<int>(runs.size());
    for (int q = 0; q < R; ++q) {
        runs[q].a = poly.points[runs[q].first];
        runs[q].b = poly.at(runs[q].last + 1);
    }
    for (int q = 0; q < R; ++q) {
        Run& run = runs[q];
        if (run.src.kind != EdgeKind::arc) continue;
        Point c = env_.vertex(run.src.id);
        run.a = refine(run.a, runs[(q + R - 1) % R].src, c);
        run.b = refine(run.b, runs[(q + 1) % R].src, c);
        StrictConcavity cc;
        cc.id = static_cast<int>(concavities_.size());
        cc.reflex_vertex = run.src.id;
        cc.center = c;
        cc.radius = eps;
        cc.start_angle = angle_of(run.b - c);
        cc.end_angle = angle_of(run.a - c);
        for (int k = run.first; k <= run.last; ++k) {
            cc.edges.push_back(k);
            poly.sources[k].id = cc.id;
        }
        BoundaryPiece bp;
        bp.is_arc = true;
        bp.a = run.a;
        bp.b = run.b;
        bp.center = c;
        bp.radius = eps;
        bp.concavity = cc.id;
        concavities_.push_back(std::move(cc));
        boundary_.push_back(bp);
    }
    std::vector<BoundaryPiece> ordered;
    size_t arc_index = 0;
    for (int q = 0; q < R; ++q) {
        if (runs[q].src.kind == EdgeKind::arc) {
            ordered.push_back(boundary_[arc_index++]);
            continue;
        }
        BoundaryPiece bp;
        bp.a = runs[(q + R - 1) % R].src.kind == EdgeKind::arc ? runs[(q + R - 1) % R].b : runs[q].a;
        bp.b = runs[(q + 1) % R].src.kind == EdgeKind::arc ? runs[(q + 1) % R].a : runs[q].b;
        ordered.push_back(bp);
    }
    boundary_ = std::move(ordered);
    polygon_ = std::move(poly);
}

namespace {

double piece_distance(const BoundaryPiece& bp, Point p) {
    if (!bp.is_arc) return point_segment_distance(p, bp.a, bp.b);
    double aa = angle_of(bp.a - bp.center), ab = angle_of(bp.b - bp.center);
    double sweep = wrap_two_pi(aa - ab);
    double off = wrap_two_pi(aa - angle_of(p - bp.center));
    if (off <= sweep) return std::abs(dist(p, bp.center) - bp.radius);
    return std::min(dist(p, bp.a), dist(p, bp.b));
}

}  // namespace

bool ContractedRegion::contains(Point p) const {
    double wind = 0.0;
    for (const BoundaryPiece& bp : boundary_) {
        if (piece_distance(bp, p) <= tol_) return true;
        Point a = bp.a - p, b = bp.b - p;
        wind += std::atan2(cross(a, b), dot(a, b));
        if (bp.is_arc && dist(p, bp.center) < bp.radius && orient(bp.a, bp.b, p) > 0.0) wind -= 2.0 * kPi;
    }
    return wind > kPi;
}

bool ContractedRegion::contains_approx(Point p) const { return inside_or_on(polygon_.points, p, tol_); }

bool ContractedRegion::robustly_visible(Point p, Point q) const {
    if (!env_.contains(p, tol_)) return false;
    return env_.clearance(p, q) >= epsilon_ - tol_;
}

bool ContractedRegion::sees(Point p, Point q) const { return segment_in_polygon(polygon_.points, p, q, tol_); }

Point ContractedRegion::project_inside(Point p) const {
    if (contains_approx(p)) return p;
    Point q = closest_on_boundary(polygon_.points, p);
    Point dir = normalized(q - p);
    for (double k : {10.0, 100.0, 1000.0, 10000.0}) {
        Point cand = q + dir * (k * tol_);
        if (locate_point(polygon_.points, cand, 0.0) == Location::inside) return cand;
    }
    return q;
}

double ContractedRegion::distance_to_boundary(Point p) const { return visrdv::distance_to_boundary(polygon_.points, p); }

const PathFinder& ContractedRegion::paths() const {
    if (!paths_) paths_ = std::make_shared<PathFinder>(polygon_.points, tol_);
    return *paths_;
}

ContractedRegion contract(const Environment& env, double epsilon, ContractionOptions opts) {
    return ContractedRegion(env, epsilon, opts);
}

}  // namespace visrdv
