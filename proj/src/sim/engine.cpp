#include "visrdv/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/primitives.hpp"
#include "visrdv/rendezvous/pma.hpp"
#include "visrdv/sim/noise.hpp"
#include "visrdv/sim/rng.hpp"

namespace visrdv {

MetricsOptions metrics_options(const SimConfig& cfg) {
    MetricsOptions o;
    o.diameter_tol = cfg.termination.diameter_tol;
    o.disk = cfg.robot_model.disk;
    o.motion_radius = cfg.robot_model.radius + cfg.s_max;
    return o;
}

namespace {

double diameter_of(const std::vector<Point>& pts, const std::vector<int>& members) {
    double d = 0.0;
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) d = std::max(d, dist(pts[members[a]], pts[members[b]]));
    return d;
}

int disc_components(const std::vector<Point>& pts, const std::vector<int>& members, double motion_radius) {
    std::vector<int> parent(members.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int groups = static_cast<int>(members.size());
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            if (dist(pts[members[a]], pts[members[b]]) <= 2.0 * motion_radius) {
                int ra = find(static_cast<int>(a)), rb = find(static_cast<int>(b));
                if (ra != rb) {
                    parent[ra] = rb;
                    --groups;
                }
            }
    return groups;
}

}  // namespace

bool component_done(const std::vector<Point>& pts, const std::vector<int>& members, const MetricsOptions& opts) {
    if (opts.disk) return disc_components(pts, members, opts.motion_radius) == 1;
    return diameter_of(pts, members) < opts.diameter_tol;
}

int cohesive_groups(const std::vector<Point>& pts, const ProximityGraph& sensing, double motion_radius) {
    int total = 0;
    for (const auto& comp : connected_components(sensing)) total += disc_components(pts, comp, motion_radius);
    return total;
}

Metrics compute_metrics(const Trace& trace, const MetricsOptions& opts) {
    Metrics m;
    if (trace.frames.empty()) return m;
    const int n = static_cast<int>(trace.frames.front().positions.size());
    std::vector<long long> wakes(n, 0);
    std::vector<long long> finished(n, -1);
    for (const TraceFrame& f : trace.frames) {
        for (int i : f.awake) ++wakes[i];
        ProximityGraph g(n, f.edges);
        for (const auto& comp : connected_components(g)) {
            if (!component_done(f.positions, comp, opts)) continue;
            for (int i : comp)
                if (finished[i] < 0) finished[i] = wakes[i];
        }
        if (!std::isnan(f.v_perim)) m.v_perim_trace.push_back(f.v_perim);
    }
    m.steps_per_robot.resize(n);
    for (int i = 0; i < n; ++i) m.steps_per_robot[i] = finished[i] >= 0 ? finished[i] : wakes[i];
    if (n > 0) {
        double sum = 0.0;
        for (long long s : m.steps_per_robot) sum += static_cast<double>(s);
        m.mean_steps = sum / n;
    }

    const TraceFrame& first = trace.frames.front();
    const TraceFrame& last = trace.frames.back();
    ProximityGraph g0(n, first.edges), g1(n, last.edges);
    if (!g0.edges.empty()) {
        int kept = 0;
        for (auto [a, b] : g0.edges)
            if (g1.has_edge(a, b)) ++kept;
        m.edges_preserved_fraction = static_cast<double>(kept) / static_cast<double>(g0.edges.size());
    }
    m.components_initial = static_cast<int>(connected_components(g0).size());
    m.components_final = static_cast<int>(connected_components(g1).size());
    if (opts.disk) m.cohesive_groups_final = cohesive_groups(last.positions, g1, opts.motion_radius);
    return m;
}

int exit_code(RunStatus s) {
    switch (s) {
    case RunStatus::converged: return 0;
    case RunStatus::step_limit: return 2;
    case RunStatus::aborted: return 3;
    }
    return 1;
}

const char* status_name(RunStatus s) {
    switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::step_limit: return "step_limit";
    case RunStatus::aborted: return "aborted";
    }
    return "unknown";
}

std::vector<double> wake_times(double clock_speed, int count) {
    std::vector<double> t;
    for (int k = 1; k <= count; ++k) t.push_back(static_cast<double>(k) * clock_speed);
    return t;
}

DiskMove resolve_disk_motion(Point p, Point step, const std::vector<Point>& others, const ConvexRegion& allowed,
                             double radius, double s_max, double tol) {
    DiskMove out;
    out.step = step;
    const double reach = 2.0 * radius + s_max;  // robot disc plus the other's motion disc
    const double motion = radius + s_max;
    // The swept disc only counts when the path comes closer to the other
    // robot than the current position does; a robot touching a neighbour can
    // still move away from it.
    auto blocks = [&](Point q, Point v) {
        double closest = point_segment_distance(q, p, p + v);
        return closest < reach && closest < dist(p, q) - 1e-12;
    };
    for (size_t j = 0; j < others.size(); ++j)
        if (dist(p, others[j]) <= 2.0 * motion && blocks(others[j], step)) out.colliding.push_back(static_cast<int>(j));
    if (out.colliding.empty()) return out;
    if (out.colliding.size() == 1 && norm(step) > 0.0) {
        auto clear = [&](Point v) {
            if (!allowed.contains(p + v, tol)) return false;
            for (size_t j = 0; j < others.size(); ++j)
                if (dist(p, others[j]) <= 2.0 * motion && blocks(others[j], v)) return false;
            return true;
        };
        for (int k = 0; k <= 18; ++k)
            for (int sign : {1, -1}) {
                if (k == 0 && sign < 0) continue;
                Point v = rotate(step * 0.5, sign * k * 5.0 * kPi / 180.0);
                if (clear(v)) {
                    out.action = DiskAction::swerve;
                    out.step = v;
                    return out;
                }
            }
        // No way around: creep straight on as far as stays clear.
        double lo = 0.0, hi = 0.5;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            if (clear(step * mid)) lo = mid;
            else hi = mid;
        }
        if (lo * norm(step) > tol) {
            out.action = DiskAction::swerve;
            out.step = step * lo;
            return out;
        }
    }
    out.action = DiskAction::hold;
    out.step = {0.0, 0.0};
    return out;
}

std::vector<Point> initial_positions(const SimConfig& cfg, std::uint64_t initial_condition) {
    EpsilonSchedule sched = cfg.effective_schedule();
    ContractionOptions copts{cfg.chord_deviation};
    ContractedRegion region(cfg.environment, sched.at(0), copts);
    if (cfg.initial_positions) {
        for (size_t k = 0; k < cfg.initial_positions->size(); ++k)
            if (!region.contains_approx((*cfg.initial_positions)[k]))
                throw ConfigError("initial_positions[" + std::to_string(k) + "]",
                                  "outside the region reachable at the initial epsilon");
        return *cfg.initial_positions;
    }
    Rng rng = make_stream(cfg.seed, "placement", initial_condition);
    BoundingBox box = bounding_box(region.polygon().points);
    const double min_gap = cfg.robot_model.disk ? 2.0 * cfg.robot_model.radius : 0.0;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Point> pts;
        long long draws = 0;
        while (static_cast<int>(pts.size()) < cfg.n) {
            if (++draws > 1000000LL * cfg.n) throw std::runtime_error("could not place robots in the region");
            Point p{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
            if (!region.contains_approx(p)) continue;
            bool apart = true;
            for (const Point& q : pts)
                if (dist(p, q) < min_gap) apart = false;
            if (apart) pts.push_back(p);
        }
        if (!cfg.require_connected_start) return pts;
        if (connected_components(sensing_graph(pts, region, cfg.r)).size() == 1) return pts;
    }
    throw std::runtime_error("no connected initial configuration found after 10000 draws");
}

namespace {

class Engine {
public:
    Engine(const SimConfig& cfg, RunKey key)
        : cfg_(cfg),
          sched_(cfg.effective_schedule()),
          params_(cfg.pma_params()),
          sensing_rng_(make_stream(cfg.seed, "sensing", key.initial_condition, key.repeat)),
          actuation_rng_(make_stream(cfg.seed, "actuation", key.initial_condition, key.repeat)),
          clock_rng_(make_stream(cfg.seed, "clocks", key.initial_condition, key.repeat)),
          key_(key) {
        for (int v : cfg.environment.reflex_vertices()) reflex_.push_back(cfg.environment.vertices[v]);
    }

    RunResult run() {
        positions_ = initial_positions(cfg_, key_.initial_condition);
        const int n = static_cast<int>(positions_.size());
        result_.trace.environment = cfg_.environment;
        result_.trace.config = config_to_json(cfg_);

        const ContractedRegion& r0 = region(0);
        TraceFrame f0;
        f0.time = 0.0;
        f0.epsilon = r0.epsilon();
        f0.positions = positions_;
        ProximityGraph g0 = sensing_graph(positions_, r0, cfg_.r);
        f0.edges = g0.edges;
        if (cfg_.checks.lyapunov) f0.v_perim = perimeter_lyapunov(positions_, r0);
        if (cfg_.robot_model.disk) check_overlaps(positions_, f0.violations);
        bool done = finished(positions_, g0);
        push_frame(std::move(f0));
        if (done) return finish(RunStatus::converged);

        if (cfg_.mode == SimMode::sync) {
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            for (long long k = 0; k < cfg_.termination.max_steps; ++k) {
                RunStatus s;
                if (batch(all, k, static_cast<double>(k + 1), s)) return finish(s);
            }
            return finish(RunStatus::step_limit);
        }

        std::vector<double> speed(n);
        for (int i = 0; i < n; ++i) speed[i] = clock_rng_.uniform(cfg_.clock_speeds.low, cfg_.clock_speeds.high);
        std::vector<long long> count(n, 1);
        const double horizon = static_cast<double>(cfg_.termination.max_steps);
        while (true) {
            double t = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) t = std::min(t, static_cast<double>(count[i]) * speed[i]);
            if (t > horizon) return finish(RunStatus::step_limit);
            std::vector<int> awake;
            for (int i = 0; i < n; ++i)
                if (static_cast<double>(count[i]) * speed[i] == t) awake.push_back(i);
            for (int i : awake) ++count[i];
            long long k = std::max(0LL, static_cast<long long>(std::ceil(t - 1e-9)) - 1);
            RunStatus s;
            if (batch(awake, k, t, s)) return finish(s);
        }
    }

private:
    const ContractedRegion& region(long long k) {
        double eps = sched_.at(k);
        auto it = regions_.find(eps);
        if (it != regions_.end()) return *it->second;
        // Epsilon only shrinks, so larger cached values are stale.
        regions_.erase(regions_.upper_bound(eps), regions_.end());
        auto reg = std::make_shared<ContractedRegion>(cfg_.environment, eps, ContractionOptions{cfg_.chord_deviation});
        return *regions_.emplace(eps, std::move(reg)).first->second;
    }

    bool finished(const std::vector<Point>& pts, const ProximityGraph& g) const {
        MetricsOptions mo = metrics_options(cfg_);
        for (const auto& comp : connected_components(g))
            if (!component_done(pts, comp, mo)) return false;
        return true;
    }

    void check_overlaps(const std::vector<Point>& pts, std::vector<std::string>& out) const {
        const double gap = 2.0 * cfg_.robot_model.radius - 1e-9;
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b)
                if (dist(pts[a], pts[b]) < gap)
                    out.push_back("disc overlap " + std::to_string(a) + "-" + std::to_string(b));
    }

    double slowdown(Point p, const std::vector<Point>& reflex, double eps) const {
        double limit = cfg_.reflex_slowdown.dist_threshold * eps;
        for (const Point& v : reflex)
            if (dist(p, v) <= limit) return cfg_.reflex_slowdown.factor;
        return 1.0;
    }

    struct Wake {
        Point step;
        std::vector<int> constrained;  // global indices
        std::optional<ConvexRegion> motion_set;
        std::string note;
    };

    Wake wake(int i, const std::vector<Point>& snap, const std::vector<int>& sensed, const ContractedRegion& reg) {
        Wake w;
        w.step = {0.0, 0.0};
        const Point p = snap[i];
        if (!cfg_.noise.active()) {
            MotionPlan plan = plan_motion(i, snap, sensed, reg, params_);
            w.constrained = plan.constrained;
            w.step = plan.step * slowdown(p, reflex_, reg.epsilon());
            if (cfg_.robot_model.disk) {
                std::vector<Point> others;
                for (int j : plan.sensed) others.push_back(snap[j]);
                w.step = resolve_disk_motion(p, w.step, others, plan.constraint, cfg_.robot_model.radius, cfg_.s_max,
                                             reg.tolerance())
                             .step;
            }
            w.motion_set = std::move(plan.motion_set);
            return w;
        }

        std::vector<Point> seen;
        for (int j : sensed) seen.push_back(snap[j]);
        PerceivedScene scene = apply_sensing_noise(sensing_rng_, p, cfg_.environment, seen, cfg_.noise, cfg_.r);
        std::unique_ptr<ContractedRegion> own;
        const ContractedRegion* pr = &reg;
        if (scene.environment_fallback) w.note = "perceived outline invalid; using the true one";
        else {
            try {
                own = std::make_unique<ContractedRegion>(scene.environment, reg.epsilon(),
                                                         ContractionOptions{cfg_.chord_deviation});
                pr = own.get();
            } catch (const InvalidContraction&) {
                w.note = "perceived region degenerate; using the true one";
            }
        }
        if (!pr->contains_approx(p)) {
            w.note = "robot outside its perceived region; holding";
            return w;
        }
        // Local scene: the robot first, then the neighbours it can use.
        std::vector<Point> local{p};
        std::vector<int> global{i};
        for (size_t k = 0; k < seen.size(); ++k) {
            Point q = scene.robots[k];
            double d = dist(p, q);
            if (d > cfg_.r) q = p + (q - p) * (cfg_.r / d);  // a sensed robot is within range by definition
            if (!pr->contains_approx(q)) q = pr->project_inside(q);
            if (dist(p, q) > cfg_.r + pr->tolerance() || !pr->sees(p, q)) continue;
            local.push_back(q);
            global.push_back(sensed[k]);
        }
        std::vector<int> idx(local.size() - 1);
        std::iota(idx.begin(), idx.end(), 1);
        MotionPlan plan = plan_motion(0, local, idx, *pr, params_);
        for (int a : plan.constrained) w.constrained.push_back(global[a]);
        std::vector<Point> prefl;
        for (int v : scene.environment.reflex_vertices()) prefl.push_back(scene.environment.vertices[v]);
        w.step = plan.step * slowdown(p, prefl, reg.epsilon());
        if (cfg_.robot_model.disk) {
            std::vector<Point> others(local.begin() + 1, local.end());
            w.step = resolve_disk_motion(p, w.step, others, plan.constraint, cfg_.robot_model.radius, cfg_.s_max,
                                         pr->tolerance())
                         .step;
        }
        w.motion_set = std::move(plan.motion_set);
        return w;
    }

    // Moves the robots in `awake` from one snapshot; returns true when the run ends.
    bool batch(const std::vector<int>& awake, long long k, double time, RunStatus& status) {
        const ContractedRegion& reg = region(k);
        const int n = static_cast<int>(positions_.size());
        const std::vector<Point> snap = positions_;
        ProximityGraph before = sensing_graph(snap, reg, cfg_.r);
        auto adj = before.adjacency();

        TraceFrame f;
        f.time = time;
        f.epsilon = reg.epsilon();
        f.awake = awake;
        std::vector<Edge> constrained;
        std::vector<Point> next = snap;
        std::vector<std::optional<ConvexRegion>> sets(n);
        for (int i : awake) {
            Wake w;
            try {
                w = wake(i, snap, adj[i], reg);
            } catch (const std::exception& e) {
                w = Wake{};
                w.step = {0.0, 0.0};
                f.violations.push_back("robot " + std::to_string(i) + " could not plan: " + e.what());
            }
            if (!w.note.empty()) f.notes.push_back("robot " + std::to_string(i) + ": " + w.note);
            for (int j : w.constrained) constrained.push_back({std::min(i, j), std::max(i, j)});
            Point u = apply_actuation_noise(actuation_rng_, w.step, cfg_.noise);
            Point q = snap[i] + u;
            if (cfg_.noise.active() && !reg.contains_approx(q)) q = reg.project_inside(q);
            next[i] = q;
            sets[i] = std::move(w.motion_set);
        }
        positions_ = next;

        ProximityGraph after = sensing_graph(next, reg, cfg_.r);
        f.positions = next;
        f.edges = after.edges;
        size_t comps_before = connected_components(before).size();
        size_t comps_after = connected_components(after).size();
        if (comps_after > comps_before) f.violations.push_back("component count increased");
        std::sort(constrained.begin(), constrained.end());
        constrained.erase(std::unique(constrained.begin(), constrained.end()), constrained.end());
        for (auto [a, b] : constrained)
            if (!after.has_edge(a, b)) f.violations.push_back("lost edge " + std::to_string(a) + "-" + std::to_string(b));
        for (int i : awake)
            if (!reg.contains_approx(next[i])) f.violations.push_back("robot " + std::to_string(i) + " left the region");
        if (cfg_.checks.lyapunov) {
            double v0 = perimeter_lyapunov(snap, reg);
            f.v_perim = perimeter_lyapunov(next, reg);
            if (f.v_perim > v0 + 1e-6 * reg.scale()) f.violations.push_back("perimeter increased");
        }
        if (cfg_.checks.motion_sets) {
            GeodesicHull all = relative_convex_hull(snap, reg);
            double slack = 1e-6 * reg.scale();
            for (int i : awake) {
                if (!sets[i]) continue;
                if (!sets[i]->contains(snap[i], slack))
                    f.violations.push_back("robot " + std::to_string(i) + " outside its motion set");
                for (const Point& v : sets[i]->vertices)
                    if (!all.contains(v, slack)) {
                        f.violations.push_back("motion set of robot " + std::to_string(i) + " leaves the group hull");
                        break;
                    }
            }
        }
        if (cfg_.robot_model.disk) check_overlaps(next, f.violations);

        bool violated = !f.violations.empty();
        bool done = finished(next, after);
        push_frame(std::move(f));
        ++result_.steps;
        if (violated && cfg_.on_violation == OnViolation::abort) {
            status = RunStatus::aborted;
            return true;
        }
        if (done) {
            status = RunStatus::converged;
            return true;
        }
        return false;
    }

    void push_frame(TraceFrame f) {
        result_.violation_count += static_cast<long long>(f.violations.size());
        result_.trace.frames.push_back(std::move(f));
    }

    RunResult finish(RunStatus s) {
        result_.status = s;
        result_.metrics = compute_metrics(result_.trace, metrics_options(cfg_));
        return std::move(result_);
    }

    const SimConfig& cfg_;
    EpsilonSchedule sched_;
    PmaParams params_;
    Rng sensing_rng_;
    Rng actuation_rng_;
    Rng clock_rng_;
    RunKey key_;
    std::vector<Point> reflex_;
    std::vector<Point> positions_;
    std::map<double, std::shared_ptr<ContractedRegion>> regions_;
    RunResult result_;
};

}  // namespace

RunResult run_simulation(const SimConfig& cfg, RunKey key) { return Engine(cfg, key).run(); }

RunResult run_sync(const SimConfig& cfg, RunKey key) {
    if (cfg.mode != SimMode::sync) throw std::invalid_argument("run_sync needs mode sync");
    return run_simulation(cfg, key);
}

RunResult run_async(const SimConfig& cfg, RunKey key) {
    if (cfg.mode != SimMode::async) throw std::invalid_argument("run_async needs mode async");
    return run_simulation(cfg, key);
}

}  // namespace visrdv
