// Acceptance suite: one PASS/FAIL line per criterion.  Run with criterion
// numbers as arguments to select a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "visrdv/constraints/constraint_set.hpp"
#include "visrdv/geometry/convex.hpp"
#include "visrdv/geometry/geodesic.hpp"
#include "visrdv/geometry/primitives.hpp"
#include "visrdv/graphs/proximity.hpp"
#include "visrdv/io/environment_io.hpp"
#include "visrdv/rendezvous/pma.hpp"
#include "visrdv/sim/engine.hpp"

using namespace visrdv;
using Clock = std::chrono::steady_clock;

namespace {

std::string data_path(const std::string& rel) { return std::string(VISRDV_DATA_DIR) + "/" + rel; }
Environment load_env(const std::string& name) { return load_environment(data_path("environments/" + name + ".json")); }
SimConfig config(const std::string& name) { return load_config(data_path("configs/" + name + ".json")); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

Point sample_in(const ContractedRegion& region, std::mt19937_64& gen) {
    BoundingBox box = bounding_box(region.polygon().points);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    for (;;) {
        Point p{ux(gen), uy(gen)};
        if (region.contains_approx(p)) return p;
    }
}

Point sample_convex(const ConvexRegion& c, std::mt19937_64& gen) {
    if (c.vertices.size() < 3) return c.vertices.front();
    BoundingBox box = bounding_box(c.vertices);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    for (;;) {
        Point p{ux(gen), uy(gen)};
        if (c.contains(p, 0.0)) return p;
    }
}

int count_components(const TraceFrame& f) {
    return static_cast<int>(connected_components(ProximityGraph(static_cast<int>(f.positions.size()), f.edges)).size());
}

char buf[512];

// ---------------------------------------------------------------------------

Outcome constraint_sets() {
    auto t0 = Clock::now();
    std::mt19937_64 gen(101);
    int pairs = 0, failures = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        if (failures++ == 0) first = what;
    };
    struct Env {
        const char* name;
        double r;
    };
    for (Env e : {Env{"square", 8.0}, Env{"lshape", 14.0}, Env{"floorplan", 30.0}}) {
        Environment env = load_env(e.name);
        for (double eps : {0.5, 1.0, 2.0}) {
            ContractedRegion reg(env, eps);
            const double diam = reg.scale();
            int here = 0;
            while (here < 112) {
                Point pi = sample_in(reg, gen), pj = sample_in(reg, gen);
                if (dist(pi, pj) > e.r || !reg.sees(pi, pj)) continue;
                ++here;
                ++pairs;
                ConstraintSet cs = constraint_set(reg, pi, pj, e.r);
                if (!is_convex(cs.region.vertices, 1e-9 * diam)) fail(std::string(e.name) + ": not convex");
                for (int s = 0; s <= 20; ++s)
                    if (!cs.region.contains(pi + (pj - pi) * (s / 20.0), 1e-9 * diam))
                        fail(std::string(e.name) + ": segment not contained");
                if (cs.iterations > static_cast<int>(reg.concavities().size())) fail(std::string(e.name) + ": too many iterations");
                Point mid = (pi + pj) * 0.5;
                for (int s = 0; s < 1000; ++s) {
                    Point q = sample_convex(cs.region, gen);
                    if (!reg.contains(q)) fail(std::string(e.name) + ": sample outside the contracted region");
                    if (dist(q, mid) > e.r / 2 + 1e-9 * diam) fail(std::string(e.name) + ": sample outside B(mid, r/2)");
                }
                ConstraintSet back = constraint_set(reg, pj, pi, e.r);
                if (hausdorff_distance(cs.region, back.region) > 1e-6 * diam)
                    fail(std::string(e.name) + ": not symmetric");
            }
        }
    }
    double secs = seconds_since(t0);
    std::snprintf(buf, sizeof buf, "%d pairs, %d failures, %.1f s (limit 30 s)%s%s", pairs, failures, secs,
                  failures ? ", first: " : "", first.c_str());
    return {pairs >= 1000 && failures == 0 && secs < 30.0, buf};
}

// ---------------------------------------------------------------------------

bool is_clique(const ProximityGraph& g, const std::vector<int>& s) {
    for (size_t a = 0; a < s.size(); ++a)
        for (size_t b = a + 1; b < s.size(); ++b)
            if (!g.has_edge(s[a], s[b])) return false;
    return true;
}

// Edge set of the locally cliqueless graph straight from the definition:
// every vertex subset is tried as a clique, every spanning tree of a clique
// as its minimum spanning tree.
std::set<Edge> brute_locally_cliqueless(const std::vector<Point>& pts, const ProximityGraph& g) {
    const int n = g.n;
    std::vector<std::vector<int>> cliques;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) s.push_back(v);
        if (s.size() >= 2 && is_clique(g, s)) cliques.push_back(s);
    }
    std::vector<std::vector<int>> maximal;
    for (const auto& c : cliques) {
        bool grows = false;
        for (int v = 0; v < n && !grows; ++v) {
            if (std::binary_search(c.begin(), c.end(), v)) continue;
            std::vector<int> d = c;
            d.insert(std::upper_bound(d.begin(), d.end(), v), v);
            grows = is_clique(g, d);
        }
        if (!grows) maximal.push_back(c);
    }
    // Prim over the clique with ties on (length, i, j)
    auto mst = [&](const std::vector<int>& m) {
        std::set<Edge> t;
        std::vector<char> in(m.size(), 0);
        in[0] = 1;
        for (size_t step = 1; step < m.size(); ++step) {
            double best = 1e300;
            Edge be{-1, -1};
            for (size_t a = 0; a < m.size(); ++a)
                for (size_t b = 0; b < m.size(); ++b) {
                    if (!in[a] || in[b]) continue;
                    Edge e{std::min(m[a], m[b]), std::max(m[a], m[b])};
                    double d = dist(pts[m[a]], pts[m[b]]);
                    if (d < best || (d == best && e < be)) {
                        best = d;
                        be = e;
                    }
                }
            t.insert(be);
            for (size_t b = 0; b < m.size(); ++b)
                if (m[b] == be.first || m[b] == be.second) in[b] = 1;
        }
        return t;
    };
    std::set<Edge> keep;
    for (auto [i, j] : g.edges) {
        bool ok = true;
        for (const auto& c : maximal)
            if (std::binary_search(c.begin(), c.end(), i) && std::binary_search(c.begin(), c.end(), j))
                ok = ok && mst(c).count({i, j});
        if (ok) keep.insert({i, j});
    }
    return keep;
}

Outcome locally_cliqueless_suite() {
    std::mt19937_64 gen(202);
    std::uniform_real_distribution<double> u(0, 10);
    int failures = 0;
    for (int k = 0; k < 200; ++k) {
        int n = 2 + k % 9;
        std::vector<Point> pts(n);
        for (auto& p : pts) p = {u(gen), u(gen)};
        ProximityGraph g = disk_graph(pts, 2.5 + (k % 6));
        ProximityGraph lc = locally_cliqueless(pts, g);
        ProximityGraph t = euclidean_mst(pts, g);
        std::set<Edge> expect = brute_locally_cliqueless(pts, g);
        bool ok = is_subgraph(t, lc) && is_subgraph(lc, g) && connected_components(lc) == connected_components(g) &&
                  std::set<Edge>(lc.edges.begin(), lc.edges.end()) == expect;
        failures += !ok;
    }
    // four-cycle without diagonals (nothing to drop, one edge more than the
    // tree) next to a scalene triangle (its longest side goes)
    std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1.05}, {0, 1.02}, {10, 0}, {11.1, 0}, {10.4, 0.9}};
    ProximityGraph g = disk_graph(pts, 1.2);
    ProximityGraph lc = locally_cliqueless(pts, g);
    ProximityGraph t = euclidean_mst(pts, g);
    bool strict = is_subgraph(t, lc) && is_subgraph(lc, g) && t.edges.size() < lc.edges.size() &&
                  lc.edges.size() < g.edges.size() && connected_components(lc) == connected_components(g);
    std::snprintf(buf, sizeof buf, "200 instances, %d failures; strict instance EMST %zu < LC %zu < G %zu: %s", failures,
                  t.edges.size(), lc.edges.size(), g.edges.size(), strict ? "yes" : "no");
    return {failures == 0 && strict, buf};
}

// ---------------------------------------------------------------------------

Outcome convergence() {
    SimConfig cfg = config("floorplan_sync");
    const double slack = 1e-6 * cfg.environment.scale();
    int converged = 0, mono_fail = 0, comp_fail = 0, violations = 0;
    double worst_time = 0.0;
    long long max_steps = 0;
    for (std::uint64_t ic = 0; ic < 10; ++ic) {
        auto t0 = Clock::now();
        RunResult r = run_simulation(cfg, {ic, 0});
        worst_time = std::max(worst_time, seconds_since(t0));
        converged += r.status == RunStatus::converged;
        max_steps = std::max(max_steps, r.steps);
        violations += static_cast<int>(r.violation_count);
        const auto& fr = r.trace.frames;
        for (size_t k = 1; k < fr.size(); ++k) {
            if (fr[k].v_perim > fr[k - 1].v_perim + slack) ++mono_fail;
            if (count_components(fr[k]) > count_components(fr[k - 1])) ++comp_fail;
        }
    }
    std::snprintf(buf, sizeof buf,
                  "%d/10 converged (max %lld steps), perimeter increases %d, component increases %d, logged "
                  "violations %d, slowest run %.1f s (limit 120 s)",
                  converged, max_steps, mono_fail, comp_fail, violations, worst_time);
    return {converged == 10 && mono_fail == 0 && comp_fail == 0 && violations == 0 && worst_time < 120.0, buf};
}

// ---------------------------------------------------------------------------

Outcome noise() {
    SimConfig dist_cfg = config("floorplan_distance_noise");
    SimConfig dir_cfg = config("floorplan_direction_noise");
    int runs = 0, preserved = 0;
    int ic_ok = 0;
    double min_frac = 1.0;
    std::string per_ic;
    for (std::uint64_t ic = 0; ic < 10; ++ic) {
        double comps_sum = 0.0;
        int comps_init = 0;
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            RunResult a = run_simulation(dist_cfg, {ic, rep});
            ++runs;
            preserved += a.metrics.edges_preserved_fraction >= 0.9;
            min_frac = std::min(min_frac, a.metrics.edges_preserved_fraction);
            RunResult b = run_simulation(dir_cfg, {ic, rep});
            comps_sum += b.metrics.components_final;
            comps_init = b.metrics.components_initial;
        }
        double mean = comps_sum / 20.0;
        bool ok = mean <= comps_init + 1e-12;
        ic_ok += ok;
        char part[48];
        std::snprintf(part, sizeof part, " %d->%.2f", comps_init, mean);
        per_ic += part;
    }
    double frac_runs = static_cast<double>(preserved) / runs;
    std::snprintf(buf, sizeof buf,
                  "distance noise: %d/%d runs keep >= 0.9 of edges (need 90%%, min %.3f); direction noise: %d/10 "
                  "ICs keep or lower the mean component count (need 9);%s",
                  preserved, runs, min_frac, ic_ok, per_ic.c_str());
    return {frac_runs >= 0.9 && ic_ok >= 9, buf};
}

// ---------------------------------------------------------------------------

Outcome asynchrony() {
    SimConfig acfg = config("floorplan_async");
    SimConfig scfg = acfg;
    scfg.mode = SimMode::sync;
    int equal = 0;
    std::string per_ic;
    for (std::uint64_t ic = 0; ic < 10; ++ic) {
        RunResult a = run_simulation(acfg, {ic, 0});
        RunResult s = run_simulation(scfg, {ic, 0});
        equal += a.metrics.components_final == s.metrics.components_final;
        char part[48];
        std::snprintf(part, sizeof part, " %d/%d", a.metrics.components_final, s.metrics.components_final);
        per_ic += part;
    }
    SimConfig unit = acfg;
    unit.clock_speeds = {1.0, 1.0};
    bool exact = true;
    for (std::uint64_t ic = 0; ic < 2; ++ic) {
        RunResult a = run_simulation(unit, {ic, 0});
        RunResult s = run_simulation(scfg, {ic, 0});
        exact = exact && a.trace.frames.size() == s.trace.frames.size();
        for (size_t k = 0; exact && k < a.trace.frames.size(); ++k)
            exact = a.trace.frames[k].positions == s.trace.frames[k].positions &&
                    a.trace.frames[k].time == s.trace.frames[k].time &&
                    a.trace.frames[k].epsilon == s.trace.frames[k].epsilon;
    }
    std::snprintf(buf, sizeof buf,
                  "final components equal on %d/10 ICs (need 9; async/sync:%s); unit clocks reproduce sync "
                  "trace: %s",
                  equal, per_ic.c_str(), exact ? "yes" : "no");
    return {equal >= 9 && exact, buf};
}

// ---------------------------------------------------------------------------

Outcome disks() {
    SimConfig dcfg = config("floorplan_disk");
    int match = 0, overlaps = 0;
    std::string per_ic;
    for (std::uint64_t ic = 0; ic < 10; ++ic) {
        RunResult d = run_simulation(dcfg, {ic, 0});
        for (const auto& f : d.trace.frames)
            for (const auto& v : f.violations) overlaps += v.rfind("disc overlap", 0) == 0;
        // point robots from the same start
        SimConfig pcfg = dcfg;
        pcfg.robot_model.disk = false;
        pcfg.initial_positions = d.trace.frames.front().positions;
        RunResult p = run_simulation(pcfg);
        int groups = d.metrics.cohesive_groups_final.value_or(-1);
        match += groups == p.metrics.components_final;
        char part[64];
        std::snprintf(part, sizeof part, " %d/%d%s", groups, p.metrics.components_final,
                      d.status == RunStatus::converged ? "" : "(step limit)");
        per_ic += part;
    }
    std::snprintf(buf, sizeof buf, "cohesive groups equal point-model components on %d/10 ICs (groups/components:%s); "
                                   "disc overlaps %d",
                  match, per_ic.c_str(), overlaps);
    return {match == 10 && overlaps == 0, buf};
}

// ---------------------------------------------------------------------------

Outcome equivariance() {
    std::mt19937_64 gen(707);
    std::uniform_real_distribution<double> ang(-kPi, kPi), sh(-100, 100);
    PmaParams params;
    struct Scene {
        const char* env;
        int n;
        double eps;
        double r;
    };
    std::vector<Scene> scenes{{"floorplan", 20, 3.0, 30},
                              {"floorplan", 10, 1.0, 30},
                              {"floorplan", 6, 0.5, 15},
                              {"lshape", 8, 1.0, 14},
                              {"square", 8, 1.0, 5}};
    double worst = 0.0;
    int failures = 0;
    for (const Scene& s : scenes) {
        Environment env = load_env(s.env);
        ContractedRegion reg(env, s.eps);
        std::vector<Point> pts(s.n);
        for (auto& p : pts) p = sample_in(reg, gen);
        PmaParams pp = params;
        pp.r = s.r;
        for (int k = 0; k < 20; ++k) {
            double err = frame_transform_check(pts, pp, env, s.eps, ang(gen), {sh(gen), sh(gen)});
            double rel = err / env.scale();
            worst = std::max(worst, rel);
            failures += rel > 1e-6;
        }
    }
    std::snprintf(buf, sizeof buf, "5 scenarios x 20 transforms, worst per-robot error %.2e of diam (limit 1e-6), %d failures",
                  worst, failures);
    return {failures == 0, buf};
}

// ---------------------------------------------------------------------------

Outcome complexity() {
    Environment env = load_env("floorplan");
    ContractedRegion reg(env, 1.0);
    std::mt19937_64 gen(808);
    std::vector<Point> pts(20);
    for (auto& p : pts) p = sample_in(reg, gen);
    std::vector<double> ms{90, 180, 360, 720}, times;
    std::string per;
    for (double m : ms) {
        PmaParams params;
        params.disk_sides = static_cast<int>(m);
        double best = 1e300;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = Clock::now();
            pma_step(pts, params, reg);
            best = std::min(best, seconds_since(t0));
        }
        times.push_back(best);
        char part[48];
        std::snprintf(part, sizeof part, " M=%d:%.3fs", static_cast<int>(m), best);
        per += part;
    }
    // least-squares slope of log time against log M
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < ms.size(); ++k) {
        double x = std::log(ms[k]), y = std::log(times[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(ms.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::snprintf(buf, sizeof buf, "per-step time vs sensing resolution:%s; fitted exponent %.2f (limit 3.5)",
                  per.c_str(), slope);
    return {slope <= 3.5, buf};
}

// ---------------------------------------------------------------------------

Outcome geometry_oracles() {
    const int cases = 10000;
    std::mt19937_64 gen(909);
    Environment floor = load_env("floorplan");
    Environment lshape = load_env("lshape");
    ContractedRegion reg(floor, 1.0);
    const double diam = reg.scale();
    int membership = 0, symmetry = 0, monotone = 0, doubling = 0, circum = 0;

    BoundingBox box = bounding_box(floor.vertices);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y), ue(0.2, 4.0);
    std::vector<double> eps_values{0.3, 1.0, 2.5};
    std::vector<ContractedRegion> regions;
    for (double e : eps_values) regions.emplace_back(floor, e);
    for (int k = 0; k < cases; ++k) {
        const ContractedRegion& r = regions[k % regions.size()];
        Point p{ux(gen), uy(gen)};
        double c = floor.contains(p, 0.0) ? floor.clearance(p) : -1.0;
        if (std::abs(c - r.epsilon()) < 1e-9) continue;
        bool expect = c >= r.epsilon();
        if (r.contains(p) != expect) ++membership;
        if (r.contains_approx(p) && !r.contains(p)) ++membership;
    }
    for (int k = 0; k < cases; ++k) {
        const ContractedRegion& r = regions[k % regions.size()];
        Point p = sample_in(r, gen), q = sample_in(r, gen);
        if (r.robustly_visible(p, q) != r.robustly_visible(q, p)) ++symmetry;
        if (r.sees(p, q) != r.sees(q, p)) ++symmetry;
        if (r.sees(p, q) && !r.robustly_visible(p, q)) ++symmetry;
    }
    for (int k = 0; k < cases; ++k) {
        std::vector<Point> x(1 + k % 4);
        for (auto& p : x) p = sample_in(reg, gen);
        std::vector<Point> y = x;
        y.push_back(sample_in(reg, gen));
        GeodesicHull hx = relative_convex_hull(x, reg), hy = relative_convex_hull(y, reg);
        bool ok = hx.perimeter <= hy.perimeter + 1e-7 * diam;
        for (const Point& p : hx.walk) ok = ok && hy.contains(p, 1e-7 * diam);
        monotone += !ok;
    }
    ContractedRegion lreg(lshape, 1.0);
    for (int k = 0; k < cases; ++k) {
        const ContractedRegion& r = k % 2 ? reg : lreg;
        Point a = sample_in(r, gen), b = sample_in(r, gen);
        double g = geodesic_length(geodesic_path(r, a, b));
        double two = relative_convex_hull({a, b}, r).perimeter;
        bool ok = std::abs(two - 2 * g) <= 1e-9 * r.scale();
        // a point on the path adds nothing
        auto path = geodesic_path(r, a, b);
        Point mid = path.size() == 2 ? (a + b) * 0.5 : path[1];
        double three = relative_convex_hull({a, mid, b}, r).perimeter;
        ok = ok && std::abs(three - 2 * g) <= 1e-7 * r.scale();
        doubling += !ok;
    }
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < cases; ++k) {
        std::vector<Point> pts(1 + k % 7);
        for (auto& p : pts) p = {u(gen), u(gen)};
        Circle c = min_enclosing_circle(pts);
        bool ok = true;
        for (const Point& p : pts) ok = ok && dist(p, c.center) <= c.radius * (1 + 1e-12) + 1e-12;
        // no enclosing pair or triple circle is smaller
        for (size_t i = 0; i < pts.size() && ok; ++i)
            for (size_t j = i + 1; j < pts.size() && ok; ++j) {
                Point ctr = (pts[i] + pts[j]) * 0.5;
                double rad = dist(pts[i], pts[j]) * 0.5;
                bool encl = true;
                for (const Point& p : pts) encl = encl && dist(p, ctr) <= rad + 1e-12;
                if (encl && rad < c.radius * (1 - 1e-9)) ok = false;
                for (size_t l = j + 1; l < pts.size() && ok; ++l) {
                    Point a = pts[i], b = pts[j], e = pts[l];
                    double den = 2 * cross(b - a, e - a);
                    if (std::abs(den) < 1e-12) continue;
                    Point cc = a + Point{(e - a).y * norm2(b - a) - (b - a).y * norm2(e - a),
                                         (b - a).x * norm2(e - a) - (e - a).x * norm2(b - a)} / den;
                    double rr = dist(cc, a);
                    bool en = true;
                    for (const Point& p : pts) en = en && dist(p, cc) <= rr + 1e-9;
                    if (en && rr < c.radius * (1 - 1e-9)) ok = false;
                }
            }
        // circumcenter of a convex region is the center of its vertices' circle
        if (pts.size() >= 3) {
            ConvexRegion h = convex_hull(pts);
            ok = ok && dist(circumcenter(h), min_enclosing_circle(h.vertices).center) <= 1e-9;
        }
        circum += !ok;
    }
    std::snprintf(buf, sizeof buf,
                  "%d cases each; failures: membership %d, visibility symmetry %d, hull monotonicity %d, "
                  "perimeter doubling %d, circumcenter minimality %d",
                  cases, membership, symmetry, monotone, doubling, circum);
    return {membership + symmetry + monotone + doubling + circum == 0, buf};
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "constraint-set generator", constraint_sets},
        {2, "locally cliqueless graph", locally_cliqueless_suite},
        {3, "rendezvous convergence", convergence},
        {4, "noise robustness", noise},
        {5, "asynchrony", asynchrony},
        {6, "disc robots", disks},
        {7, "frame equivariance", equivariance},
        {8, "complexity smoke", complexity},
        {9, "geometry oracles", geometry_oracles},
    };
    std::set<int> only;
    for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%d] %-26s %s  (%.1f s)  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                    o.detail.c_str());
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
