#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "visrdv/geometry/convex.hpp"
#include "visrdv/graphs/proximity.hpp"
#include "visrdv/sim/config.hpp"

namespace visrdv {

// State after one round (sync) or one batch of simultaneous wakes (async).
// Frame 0 is the initial configuration.
struct TraceFrame {
    double time = 0.0;
    double epsilon = 0.0;
    std::vector<Point> positions;
    std::vector<Edge> edges;  // sensing graph at `epsilon`
    std::vector<int> awake;   // robots that moved to produce this frame
    double v_perim = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> violations;
    std::vector<std::string> notes;  // perception fallbacks and holds under noise
};

struct Trace {
    Environment environment;
    nlohmann::json config;
    std::vector<TraceFrame> frames;
};

struct Metrics {
    std::vector<long long> steps_per_robot;
    double mean_steps = 0.0;
    double edges_preserved_fraction = 1.0;
    int components_initial = 0;
    int components_final = 0;
    std::vector<double> v_perim_trace;
    std::optional<int> cohesive_groups_final;  // disk robots only
};

struct MetricsOptions {
    double diameter_tol = 0.05;
    bool disk = false;
    double motion_radius = 0.7;  // robot radius + s_max
};

MetricsOptions metrics_options(const SimConfig& cfg);

// A component has finished when its diameter is below the tolerance (point
// robots) or its motion discs form a connected graph (disk robots).
bool component_done(const std::vector<Point>& pts, const std::vector<int>& members, const MetricsOptions& opts);

Metrics compute_metrics(const Trace& trace, const MetricsOptions& opts);

// Number of groups whose motion discs (radius motion_radius) chain together,
// counted inside each connected component of the sensing graph.
int cohesive_groups(const std::vector<Point>& pts, const ProximityGraph& sensing, double motion_radius);

enum class RunStatus { converged, step_limit, aborted };

int exit_code(RunStatus s);
const char* status_name(RunStatus s);

struct RunResult {
    RunStatus status = RunStatus::converged;
    Metrics metrics;
    Trace trace;
    long long violation_count = 0;
    long long steps = 0;  // rounds (sync) or distinct wake instants (async)
};

// Which initial condition and repeat a run belongs to; selects the random
// streams derived from the config seed.
struct RunKey {
    std::uint64_t initial_condition = 0;
    std::uint64_t repeat = 0;
};

// Explicit positions from the config or a random draw for the given initial
// condition.
std::vector<Point> initial_positions(const SimConfig& cfg, std::uint64_t initial_condition = 0);

RunResult run_simulation(const SimConfig& cfg, RunKey key = {});
RunResult run_sync(const SimConfig& cfg, RunKey key = {});
RunResult run_async(const SimConfig& cfg, RunKey key = {});

// Wake instants for a robot with the given clock speed, in order.
std::vector<double> wake_times(double clock_speed, int count);

enum class DiskAction { free, swerve, hold };

struct DiskMove {
    DiskAction action = DiskAction::free;
    Point step;
    std::vector<int> colliding;  // indices into `others`
};

// Collision handling for disk robots.  A neighbour collides when its motion
// disc meets ours and our disc, swept along the step, comes within reach of
// that motion disc while getting closer to it.  No colliding neighbour keeps the step;
// one colliding neighbour rotates the half-speed step by the smallest
// multiple of 5 degrees (up to 90, alternating sides) that clears it and
// stays in `allowed` (the robot's constraint set, so sensing edges survive),
// else creeps straight as far as stays clear; anything else holds.
DiskMove resolve_disk_motion(Point p, Point step, const std::vector<Point>& others, const ConvexRegion& allowed,
                             double radius, double s_max, double tol);

}  // namespace visrdv
