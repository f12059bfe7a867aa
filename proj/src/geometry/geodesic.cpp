#include "visrdv/geometry/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <stdexcept>
#include <unordered_map>

#include "visrdv/geometry/convex.hpp"
#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The line through v with direction w leaves both neighbours of v on one side.
bool tangent_at(Point prev, Point v, Point next, Point w) {
    double s1 = cross(w, prev - v), s2 = cross(w, next - v);
    double scale = norm(w) * std::max(dist(prev, v), dist(next, v));
    return s1 * s2 >= -1e-12 * scale * scale;
}

}  // namespace

PathFinder::PathFinder(std::vector<Point> polygon, double tol) : poly_(std::move(polygon)), tol_(tol) {
    int n = static_cast<int>(poly_.size());
    for (int k = 0; k < n; ++k) {
        Point a = poly_[(k + n - 1) % n], b = poly_[k], c = poly_[(k + 1) % n];
        double l = dist(a, c);
        if (l > 0.0 && orient(a, b, c) / l < -tol_) reflex_.push_back(k);
    }
}

bool PathFinder::visible(Point a, Point b) const { return segment_in_polygon(poly_, a, b, tol_); }

void PathFinder::build_reflex_graph() const {
    std::call_once(built_, [this] {
        int n = static_cast<int>(poly_.size());
        int R = static_cast<int>(reflex_.size());
        reflex_adj_.assign(R, {});
        for (int i = 0; i < R; ++i) {
            int vi = reflex_[i];
            Point pi = poly_[vi], ai = poly_[(vi + n - 1) % n], ci = poly_[(vi + 1) % n];
            for (int j = i + 1; j < R; ++j) {
                int vj = reflex_[j];
                Point pj = poly_[vj], aj = poly_[(vj + n - 1) % n], cj = poly_[(vj + 1) % n];
                Point w = pj - pi;
                if (!tangent_at(ai, pi, ci, w) || !tangent_at(aj, pj, cj, w)) continue;
                if (!visible(pi, pj)) continue;
                double d = norm(w);
                reflex_adj_[i].push_back({j, d});
                reflex_adj_[j].push_back({i, d});
            }
        }
    });
}

std::vector<int> PathFinder::visible_reflex(Point p) const {
    int n = static_cast<int>(poly_.size());
    std::vector<int> out;
    for (int r = 0; r < static_cast<int>(reflex_.size()); ++r) {
        int v = reflex_[r];
        Point pv = poly_[v];
        if (dist(p, pv) <= tol_) {
            out.push_back(r);
            continue;
        }
        if (!tangent_at(poly_[(v + n - 1) % n], pv, poly_[(v + 1) % n], pv - p)) continue;
        if (visible(p, pv)) out.push_back(r);
    }
    return out;
}

std::vector<Point> PathFinder::route(Point a, Point b, const std::vector<int>& vis_a, const std::vector<int>& vis_b) const {
    build_reflex_graph();
    int R = static_cast<int>(reflex_.size());
    std::vector<double> d(R, kInf);
    std::vector<int> pred(R, -1);
    std::vector<bool> done(R, false);
    for (int r : vis_a) d[r] = dist(a, poly_[reflex_[r]]);
    std::vector<double> to_b(R, kInf);
    for (int r : vis_b) to_b[r] = dist(poly_[reflex_[r]], b);
    double best = kInf;
    int best_r = -1;
    while (true) {
        int u = -1;
        for (int r = 0; r < R; ++r)
            if (!done[r] && d[r] < kInf && (u < 0 || d[r] < d[u])) u = r;
        if (u < 0 || d[u] >= best) break;
        done[u] = true;
        if (d[u] + to_b[u] < best) {
            best = d[u] + to_b[u];
            best_r = u;
        }
        for (auto [v, w] : reflex_adj_[u]) {
            if (d[u] + w < d[v]) {
                d[v] = d[u] + w;
                pred[v] = u;
            }
        }
    }
    if (best_r < 0) throw std::runtime_error("no path between points inside the region");
    std::vector<Point> path{b};
    for (int r = best_r; r >= 0; r = pred[r]) path.push_back(poly_[reflex_[r]]);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    path.erase(std::unique(path.begin(), path.end()), path.end());
    return path;
}

std::vector<Point> PathFinder::shortest_path(Point a, Point b) const {
    if (visible(a, b)) return {a, b};
    return route(a, b, visible_reflex(a), visible_reflex(b));
}

std::vector<PathFinder::PairPath> PathFinder::all_pairs(const std::vector<Point>& pts) const {
    int k = static_cast<int>(pts.size());
    std::vector<PairPath> out;
    std::vector<std::vector<int>> vis(k);
    std::vector<bool> have(k, false);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (visible(pts[i], pts[j])) {
                out.push_back({i, j, {pts[i], pts[j]}});
                continue;
            }
            for (int q : {i, j}) {
                if (!have[q]) {
                    vis[q] = visible_reflex(pts[q]);
                    have[q] = true;
                }
            }
            out.push_back({i, j, route(pts[i], pts[j], vis[i], vis[j])});
        }
    }
    return out;
}

std::vector<Point> geodesic_path(const ContractedRegion& region, Point a, Point b) {
    if (!region.contains_approx(a) || !region.contains_approx(b))
        throw PreconditionError("geodesic endpoints must lie in the contracted region");
    return region.paths().shortest_path(a, b);
}

double geodesic_length(const std::vector<Point>& path) {
    double s = 0.0;
    for (size_t k = 0; k + 1 < path.size(); ++k) s += dist(path[k], path[k + 1]);
    return s;
}

bool GeodesicHull::contains(Point p, double tol) const {
    size_t n = walk.size();
    if (n == 0) return false;
    if (n == 1) return dist(p, walk[0]) <= tol;
    double wind = 0.0;
    for (size_t k = 0; k < n; ++k) {
        Point a = walk[k], b = walk[(k + 1) % n];
        if (point_segment_distance(p, a, b) <= tol) return true;
        wind += std::atan2(cross(a - p, b - p), dot(a - p, b - p));
    }
    return std::abs(wind) > kPi;
}

namespace {

// Planar arrangement of segments with vertices merged within tol.
class Arrangement {
public:
    explicit Arrangement(double tol) : tol_(tol), cell_(std::max(tol * 4.0, 1e-300)) {}

    int vertex(Point p) {
        long long cx = static_cast<long long>(std::floor(p.x / cell_));
        long long cy = static_cast<long long>(std::floor(p.y / cell_));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (int v : it->second)
                    if (dist(pts_[v], p) <= tol_) return v;
            }
        pts_.push_back(p);
        grid_[key(cx, cy)].push_back(static_cast<int>(pts_.size() - 1));
        return static_cast<int>(pts_.size() - 1);
    }

    void add_edge(int a, int b) {
        if (a == b) return;
        edges_.insert({std::min(a, b), std::max(a, b)});
    }

    const std::vector<Point>& points() const { return pts_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

private:
    static long long key(long long x, long long y) { return x * 73856093LL ^ y * 19349663LL; }
    double tol_;
    double cell_;
    std::vector<Point> pts_;
    std::unordered_map<long long, std::vector<int>> grid_;
    std::set<std::pair<int, int>> edges_;
};

std::vector<Point> outer_walk(const std::vector<Point>& pts, const std::set<std::pair<int, int>>& edges) {
    int n = static_cast<int>(pts.size());
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // Strict counterclockwise order of neighbours around each vertex.
    for (int v = 0; v < n; ++v) {
        auto key = [&](int w) { return std::make_tuple(wrap_two_pi(angle_of(pts[w] - pts[v])), dist(pts[w], pts[v]), w); };
        std::sort(adj[v].begin(), adj[v].end(), [&](int x, int y) { return key(x) < key(y); });
    }
    int s = 0;
    for (int v = 1; v < n; ++v)
        if (pts[v].y < pts[s].y || (pts[v].y == pts[s].y && pts[v].x < pts[s].x)) s = v;
    if (adj[s].empty()) return {pts[s]};
    // Around the lowest vertex the first neighbour by angle starts the outer boundary.
    int first = adj[s][0];
    std::vector<Point> walk{pts[s]};
    int prev = s, cur = first;
    size_t cap = 2 * edges.size() + 2;
    for (size_t it = 0; it < cap; ++it) {
        const auto& row = adj[cur];
        size_t at = std::find(row.begin(), row.end(), prev) - row.begin();
        int next = row[(at + 1) % row.size()];
        if (cur == s && next == first) return walk;
        walk.push_back(pts[cur]);
        prev = cur;
        cur = next;
    }
    throw std::runtime_error("hull boundary walk did not close");
}

GeodesicHull finish(std::vector<Point> walk, const std::vector<Point>& pts, const std::vector<int>& first_copy,
                    double tol) {
    GeodesicHull h;
    h.walk = std::move(walk);
    h.perimeter = visrdv::perimeter(h.walk);
    size_t n = h.walk.size();
    for (size_t i = 0; i < pts.size(); ++i) {
        if (first_copy[i] != static_cast<int>(i)) continue;
        bool extreme = false;
        if (n == 1) extreme = dist(h.walk[0], pts[i]) <= tol;
        for (size_t k = 0; k < n && n > 1 && !extreme; ++k) {
            if (dist(h.walk[k], pts[i]) > tol) continue;
            Point in = normalized(h.walk[k] - h.walk[(k + n - 1) % n]);
            Point out = normalized(h.walk[(k + 1) % n] - h.walk[k]);
            double c = cross(in, out);
            if (c > 1e-9 || (std::abs(c) <= 1e-9 && dot(in, out) < 0.0)) extreme = true;
        }
        if (extreme) h.vertices.push_back(static_cast<int>(i));
    }
    return h;
}

}  // namespace

GeodesicHull relative_convex_hull(const std::vector<Point>& pts, const PathFinder& paths) {
    if (pts.empty()) throw std::invalid_argument("relative convex hull of an empty set");
    double tol = paths.tolerance();
    for (const Point& p : pts)
        if (!inside_or_on(paths.polygon(), p, tol)) throw PreconditionError("hull input lies outside the region");

    std::vector<int> first_copy(pts.size());
    std::vector<Point> uniq;
    for (size_t i = 0; i < pts.size(); ++i) {
        first_copy[i] = static_cast<int>(i);
        for (size_t j = 0; j < i; ++j)
            if (first_copy[j] == static_cast<int>(j) && dist(pts[i], pts[j]) <= tol) {
                first_copy[i] = static_cast<int>(j);
                break;
            }
        if (first_copy[i] == static_cast<int>(i)) uniq.push_back(pts[i]);
    }
    if (uniq.size() == 1) return finish({uniq[0]}, pts, first_copy, tol);

    // When every side of the ordinary hull is visible, the region cannot
    // poke into it, so the two hulls coincide.
    ConvexRegion hull = convex_hull(uniq, tol);
    bool plain = true;
    const auto& hv = hull.vertices;
    for (size_t k = 0; k < hv.size() && plain; ++k) plain = paths.visible(hv[k], hv[(k + 1) % hv.size()]);
    if (plain) return finish(hv, pts, first_copy, tol);

    std::vector<std::pair<Point, Point>> segs;
    for (const auto& pp : paths.all_pairs(uniq))
        for (size_t k = 0; k + 1 < pp.path.size(); ++k)
            if (dist(pp.path[k], pp.path[k + 1]) > tol) {
                Point a = pp.path[k], b = pp.path[k + 1];
                if (lex_less(b, a)) std::swap(a, b);
                segs.push_back({a, b});
            }
    // Paths through the same reflex corners share pieces exactly.
    auto seg_less = [](const auto& x, const auto& y) {
        if (x.first.x != y.first.x) return x.first.x < y.first.x;
        if (x.first.y != y.first.y) return x.first.y < y.first.y;
        if (x.second.x != y.second.x) return x.second.x < y.second.x;
        return x.second.y < y.second.y;
    };
    std::sort(segs.begin(), segs.end(), seg_less);
    segs.erase(std::unique(segs.begin(), segs.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; }),
               segs.end());

    auto cuts = mutual_cuts(segs, tol);
    Arrangement arr(tol);
    for (const Point& p : uniq) arr.vertex(p);
    for (auto& cs : cuts) {
        int prev = arr.vertex(cs[0].second);
        for (size_t k = 1; k < cs.size(); ++k) {
            int v = arr.vertex(cs[k].second);
            arr.add_edge(prev, v);
            prev = v;
        }
    }
    return finish(outer_walk(arr.points(), arr.edges()), pts, first_copy, tol);
}

GeodesicHull relative_convex_hull(const std::vector<Point>& pts, const ContractedRegion& region) {
    return relative_convex_hull(pts, region.paths());
}

}  // namespace visrdv
