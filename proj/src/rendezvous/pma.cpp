#include "visrdv/rendezvous/pma.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "visrdv/geometry/primitives.hpp"
#include "visrdv/geometry/tagged_polygon.hpp"
#include "visrdv/geometry/visibility.hpp"

namespace visrdv {

ProximityGraph sensing_graph(const std::vector<Point>& pts, const ContractedRegion& region, double r) {
    return range_visibility_graph(pts, region, r, Visibility::polygonal);
}

namespace {

std::vector<int> cliqueless_neighbors(int i, const std::vector<Point>& pts, const std::vector<int>& sensed,
                                      const ContractedRegion& region, double r) {
    // Maximal cliques through an edge (i, j) only involve neighbours of i, so
    // the local graph on i and its neighbours decides every edge at i.
    std::vector<int> local{i};
    local.insert(local.end(), sensed.begin(), sensed.end());
    std::vector<Point> lp;
    for (int k : local) lp.push_back(pts[k]);
    std::vector<Edge> e;
    int m = static_cast<int>(local.size());
    for (int a = 1; a < m; ++a) e.push_back({0, a});
    for (int a = 1; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (dist(lp[a], lp[b]) <= r && region.sees(lp[a], lp[b])) e.push_back({a, b});
    ProximityGraph lc = locally_cliqueless(lp, ProximityGraph(m, std::move(e)));
    std::vector<int> out;
    for (int a : lc.neighbors(0)) out.push_back(local[a]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

MotionPlan plan_motion(int i, const std::vector<Point>& pts, const std::vector<int>& sensed,
                       const ContractedRegion& region, const PmaParams& params) {
    const double tol = region.tolerance();
    MotionPlan plan;
    for (int j : sensed)
        if (j != i) plan.sensed.push_back(j);
    std::sort(plan.sensed.begin(), plan.sensed.end());
    plan.constrained = params.constraint_graph == ConstraintGraph::sensing
                           ? plan.sensed
                           : cliqueless_neighbors(i, pts, plan.sensed, region, params.r);

    TaggedPolygon vis = visibility_region(region, pts[i]);
    ConstraintOptions opts{params.disk_sides};
    plan.constraint = combined_constraint_set(i, pts, plan.constrained, region, params.r, opts, &vis);

    std::vector<Point> group{pts[i]};
    for (int j : plan.sensed) group.push_back(pts[j]);
    plan.hull = relative_convex_hull(group, region);

    TaggedPolygon walk;
    walk.points = plan.hull.walk;
    walk.sources.assign(walk.points.size(), EdgeSource{});
    std::vector<Point> pieces{pts[i]};
    if (walk.points.size() >= 3) {
        TaggedPolygon clipped = clip_to_convex(walk, plan.constraint, {EdgeKind::cut, 0, 0.0}, tol);
        pieces.insert(pieces.end(), clipped.points.begin(), clipped.points.end());
    } else {
        // A point or a segment: clip the segment directly.
        std::optional<ConvexRegion> seg = intersect_convex(plan.constraint, convex_hull(walk.points), tol);
        if (seg) pieces.insert(pieces.end(), seg->vertices.begin(), seg->vertices.end());
    }
    plan.motion_set = convex_hull(pieces, tol);
    plan.target = step_target(plan.motion_set);
    plan.step = saturated_step(pts[i], plan.target, params.s_max);
    return plan;
}

ConvexRegion motion_set(int i, const std::vector<Point>& pts, const PmaParams& params, const ContractedRegion& region) {
    ProximityGraph g = sensing_graph(pts, region, params.r);
    return plan_motion(i, pts, g.neighbors(i), region, params).motion_set;
}

Point step_target(const ConvexRegion& motion) { return circumcenter(motion); }

Point saturated_step(Point from, Point target, double s_max) {
    Point d = target - from;
    double len = norm(d);
    if (len == 0.0) return {0.0, 0.0};
    return d * (std::min(s_max, len) / len);
}

double perimeter_lyapunov(const std::vector<Point>& pts, const ContractedRegion& region) {
    return relative_convex_hull(pts, region).perimeter;
}

StepResult pma_step(const std::vector<Point>& pts, const PmaParams& params, const ContractedRegion& region,
                    const StepChecks& checks) {
    const int n = static_cast<int>(pts.size());
    StepResult res;
    res.positions = pts;
    ProximityGraph g = sensing_graph(pts, region, params.r);
    auto adj = g.adjacency();
    res.plans.reserve(n);
    for (int i = 0; i < n; ++i) res.plans.push_back(plan_motion(i, pts, adj[i], region, params));
    for (int i = 0; i < n; ++i) res.positions[i] = pts[i] + res.plans[i].step;

    StepReport& rep = res.report;
    ProximityGraph after = sensing_graph(res.positions, region, params.r);
    rep.components_before = static_cast<int>(connected_components(g).size());
    rep.components_after = static_cast<int>(connected_components(after).size());
    if (rep.components_after > rep.components_before) rep.violations.push_back("component count increased");
    std::vector<Edge> constrained;
    for (int i = 0; i < n; ++i)
        for (int j : res.plans[i].constrained) constrained.push_back({std::min(i, j), std::max(i, j)});
    std::sort(constrained.begin(), constrained.end());
    constrained.erase(std::unique(constrained.begin(), constrained.end()), constrained.end());
    rep.constraint_edges = static_cast<int>(constrained.size());
    for (auto [a, b] : constrained) {
        if (after.has_edge(a, b)) ++rep.edges_kept;
        else rep.violations.push_back("lost edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    for (int i = 0; i < n; ++i)
        if (!region.contains_approx(res.positions[i])) rep.violations.push_back("robot " + std::to_string(i) + " left the region");
    if (checks.lyapunov) {
        rep.v_before = perimeter_lyapunov(pts, region);
        rep.v_after = perimeter_lyapunov(res.positions, region);
        if (rep.v_after > rep.v_before + 1e-6 * region.scale()) rep.violations.push_back("perimeter increased");
    }
    if (checks.motion_sets) {
        GeodesicHull all = relative_convex_hull(pts, region);
        double slack = 1e-6 * region.scale();
        for (int i = 0; i < n; ++i) {
            const ConvexRegion& x = res.plans[i].motion_set;
            if (!x.contains(pts[i], slack)) rep.violations.push_back("robot " + std::to_string(i) + " outside its motion set");
            for (const Point& q : x.vertices)
                if (!all.contains(q, slack)) {
                    rep.violations.push_back("motion set of robot " + std::to_string(i) + " leaves the group hull");
                    break;
                }
        }
    }
    return res;
}

double frame_transform_check(const std::vector<Point>& pts, const PmaParams& params, const Environment& env,
                             double epsilon, double angle, Point shift) {
    ContractedRegion base(env, epsilon);
    std::vector<Point> moved;
    for (const Point& p : pts) moved.push_back(rotate(p, angle) + shift);
    Environment env2 = transformed(env, angle, shift);
    ContractionOptions opts{base.chord_deviation()};
    ContractedRegion other(env2, epsilon, opts);
    StepChecks none{false, false};
    auto a = pma_step(pts, params, base, none).positions;
    auto b = pma_step(moved, params, other, none).positions;
    double worst = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, dist(rotate(b[i] - shift, -angle), a[i]));
    return worst;
}

std::string to_jsonl(const StepReport& r) {
    nlohmann::json j;
    j["step"] = r.index;
    j["v_before"] = r.v_before;
    j["v_after"] = r.v_after;
    j["components_before"] = r.components_before;
    j["components_after"] = r.components_after;
    j["constraint_edges"] = r.constraint_edges;
    j["edges_kept"] = r.edges_kept;
    j["violations"] = r.violations;
    return j.dump();
}

}  // namespace visrdv
