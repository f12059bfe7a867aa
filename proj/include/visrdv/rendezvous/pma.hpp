#pragma once

#include <string>
#include <vector>

#include "visrdv/constraints/constraint_set.hpp"
#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/convex.hpp"
#include "visrdv/geometry/geodesic.hpp"
#include "visrdv/graphs/proximity.hpp"

namespace visrdv {

enum class ConstraintGraph { sensing, locally_cliqueless };

struct PmaParams {
    double r = 30.0;      // sensing range
    double s_max = 0.5;   // largest step per round
    ConstraintGraph constraint_graph = ConstraintGraph::sensing;
    int disk_sides = 64;
};

// Everything one robot computes in a round.
struct MotionPlan {
    std::vector<int> sensed;       // neighbours used for the hull
    std::vector<int> constrained;  // neighbours whose constraint sets apply
    ConvexRegion constraint;
    GeodesicHull hull;             // of the robot and its sensed neighbours
    ConvexRegion motion_set;
    Point target;
    Point step;
};

// Sensing graph used by the algorithm: within range r and mutually visible in
// the polygonal region.
ProximityGraph sensing_graph(const std::vector<Point>& pts, const ContractedRegion& region, double r);

// Plan of robot i given the positions it perceives and its sensed neighbours.
MotionPlan plan_motion(int i, const std::vector<Point>& pts, const std::vector<int>& sensed,
                       const ContractedRegion& region, const PmaParams& params);

// Motion set of robot i using its neighbours in the sensing graph.
ConvexRegion motion_set(int i, const std::vector<Point>& pts, const PmaParams& params, const ContractedRegion& region);

Point step_target(const ConvexRegion& motion);

// Step toward the target, saturated at s_max; zero when already there.
Point saturated_step(Point from, Point target, double s_max);

double perimeter_lyapunov(const std::vector<Point>& pts, const ContractedRegion& region);

struct StepReport {
    int index = 0;
    double v_before = 0.0;
    double v_after = 0.0;
    int components_before = 0;
    int components_after = 0;
    int constraint_edges = 0;
    int edges_kept = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

struct StepResult {
    std::vector<Point> positions;
    std::vector<MotionPlan> plans;
    StepReport report;
};

struct StepChecks {
    bool lyapunov = true;
    bool motion_sets = false;  // p_i in X_i and X_i inside the hull of everyone
};

// One synchronous round: everybody plans from the same snapshot, then moves.
StepResult pma_step(const std::vector<Point>& pts, const PmaParams& params, const ContractedRegion& region,
                    const StepChecks& checks = {});

// Largest distance between the step computed in a rotated and shifted frame,
// mapped back, and the step computed in the original frame.
double frame_transform_check(const std::vector<Point>& pts, const PmaParams& params, const Environment& env,
                             double epsilon, double angle, Point shift);

std::string to_jsonl(const StepReport& report);

}  // namespace visrdv
