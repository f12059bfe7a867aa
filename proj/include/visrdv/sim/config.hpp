#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "visrdv/geometry/environment.hpp"
#include "visrdv/rendezvous/pma.hpp"

namespace visrdv {

// Schema violation; key_path points at the offending entry, e.g.
// "epsilon_schedule.decay".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key_path, const std::string& what)
        : std::runtime_error(key_path.empty() ? what : key_path + ": " + what), key_path_(std::move(key_path)) {}
    const std::string& key_path() const { return key_path_; }

private:
    std::string key_path_;
};

enum class SimMode { sync, async };
enum class OnViolation { log, abort };

struct EpsilonSchedule {
    double initial = 3.0;
    double decay = 0.97;
    double floor = 0.05;

    // max(floor, initial * decay^k)
    double at(long long k) const;
};

struct NoiseConfig {
    double dist_rel = 0.0;  // range scaled by 1 + U[-dist_rel, dist_rel]
    double dir_deg = 0.0;   // bearing shifted by U[-dir_deg, dir_deg] degrees

    bool active() const { return dist_rel > 0.0 || dir_deg > 0.0; }
};

struct RobotModel {
    bool disk = false;
    double radius = 0.2;
};

struct ReflexSlowdown {
    double dist_threshold = 2.0;  // in units of epsilon
    double factor = 0.5;
};

struct Termination {
    double diameter_tol = 0.05;
    long long max_steps = 5000;
};

struct ClockSpeeds {
    double low = 0.9;
    double high = 1.0;
};

struct Checks {
    bool lyapunov = true;
    bool motion_sets = false;
};

struct SimConfig {
    std::string environment_path;  // as written in the file
    Environment environment;
    int n = 20;
    std::uint64_t seed = 1;
    std::optional<std::vector<Point>> initial_positions;  // nullopt: random
    bool require_connected_start = true;
    double r = 30.0;
    double s_max = 0.5;
    EpsilonSchedule epsilon_schedule;
    SimMode mode = SimMode::sync;
    ClockSpeeds clock_speeds;
    NoiseConfig noise;
    RobotModel robot_model;
    ReflexSlowdown reflex_slowdown;
    Termination termination;
    ConstraintGraph constraint_graph = ConstraintGraph::sensing;
    int disk_polygon_sides = 64;
    double chord_deviation = -1.0;  // <= 0: automatic
    OnViolation on_violation = OnViolation::log;
    Checks checks;

    PmaParams pma_params() const;
    // Schedule actually used: the disk model never lets epsilon drop below
    // the robot radius.
    EpsilonSchedule effective_schedule() const;
};

// base_dir resolves a relative environment path.
SimConfig parse_config(const nlohmann::json& doc, const std::string& base_dir);
SimConfig load_config(const std::string& path);
nlohmann::json config_to_json(const SimConfig& cfg);

}  // namespace visrdv
