#include "visrdv/sim/config.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "visrdv/io/environment_io.hpp"

namespace visrdv {

double EpsilonSchedule::at(long long k) const { return std::max(floor, initial * std::pow(decay, static_cast<double>(k))); }

PmaParams SimConfig::pma_params() const {
    PmaParams p;
    p.r = r;
    p.s_max = s_max;
    p.constraint_graph = constraint_graph;
    p.disk_sides = disk_polygon_sides;
    return p;
}

EpsilonSchedule SimConfig::effective_schedule() const {
    EpsilonSchedule s = epsilon_schedule;
    if (robot_model.disk) s.floor = std::max(s.floor, robot_model.radius);
    return s;
}

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(join(path, it.key()), "unknown key");
}

const json& object_at(const json& doc, const std::string& key, const std::string& path) {
    const json& v = doc.at(key);
    if (!v.is_object()) throw ConfigError(path, "expected an object");
    return v;
}

double number(const json& doc, const std::string& key, const std::string& path, double fallback) {
    if (!doc.contains(key)) return fallback;
    const json& v = doc.at(key);
    if (v.is_array()) throw ConfigError(path, "must be a single value shared by all robots");
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

long long integer(const json& doc, const std::string& key, const std::string& path, long long fallback) {
    if (!doc.contains(key)) return fallback;
    const json& v = doc.at(key);
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<long long>();
}

bool boolean(const json& doc, const std::string& key, const std::string& path, bool fallback) {
    if (!doc.contains(key)) return fallback;
    const json& v = doc.at(key);
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
    return v.get<bool>();
}

std::string text(const json& doc, const std::string& key, const std::string& path, const std::string& fallback) {
    if (!doc.contains(key)) return fallback;
    const json& v = doc.at(key);
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw ConfigError(path, what);
}

}  // namespace

SimConfig parse_config(const json& doc, const std::string& base_dir) {
    if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
    if (doc.contains("robots"))
        throw ConfigError("robots", "per-robot parameters are not supported; r, s_max and epsilon are shared by all robots");
    only_keys(doc,
              "",
              {"environment", "n", "seed", "initial_positions", "require_connected_start", "r", "s_max",
               "epsilon_schedule", "mode", "clock_speeds", "noise", "robot_model", "reflex_slowdown", "termination",
               "constraint_graph", "disk_polygon_sides", "chord_deviation", "on_violation", "checks"});
    SimConfig c;

    if (!doc.contains("environment")) throw ConfigError("environment", "required");
    const json& env = doc.at("environment");
    try {
        if (env.is_string()) {
            c.environment_path = env.get<std::string>();
            std::filesystem::path p(c.environment_path);
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            c.environment = load_environment(p.string());
        } else if (env.is_object()) {
            c.environment = environment_from_json(env);
        } else {
            throw ConfigError("environment", "expected a file path or an object with vertices");
        }
    } catch (const InvalidEnvironment& e) {
        throw ConfigError("environment", e.what());
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        throw ConfigError("environment", e.what());
    }

    c.n = static_cast<int>(integer(doc, "n", "n", c.n));
    require(c.n >= 1, "n", "must be at least 1");
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_integer()) throw ConfigError("seed", "expected an integer");
        c.seed = s.is_number_unsigned() ? s.get<std::uint64_t>() : static_cast<std::uint64_t>(s.get<long long>());
    }
    if (doc.contains("initial_positions")) {
        const json& ip = doc.at("initial_positions");
        if (ip.is_string()) {
            require(ip.get<std::string>() == "random", "initial_positions", "expected \"random\" or a list of points");
        } else if (ip.is_array()) {
            std::vector<Point> pts;
            for (size_t k = 0; k < ip.size(); ++k) {
                const json& v = ip[k];
                std::string path = "initial_positions[" + std::to_string(k) + "]";
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                    throw ConfigError(path, "expected [x, y]");
                pts.push_back({v[0].get<double>(), v[1].get<double>()});
            }
            if (!doc.contains("n")) c.n = static_cast<int>(pts.size());
            require(static_cast<int>(pts.size()) == c.n, "initial_positions", "length does not match n");
            c.initial_positions = std::move(pts);
        } else {
            throw ConfigError("initial_positions", "expected \"random\" or a list of points");
        }
    }
    c.require_connected_start = boolean(doc, "require_connected_start", "require_connected_start", c.require_connected_start);
    c.r = number(doc, "r", "r", c.r);
    require(c.r > 0.0, "r", "must be positive");
    c.s_max = number(doc, "s_max", "s_max", c.s_max);
    require(c.s_max > 0.0, "s_max", "must be positive");

    if (doc.contains("epsilon_schedule")) {
        const json& e = object_at(doc, "epsilon_schedule", "epsilon_schedule");
        only_keys(e, "epsilon_schedule", {"initial", "decay", "floor"});
        c.epsilon_schedule.initial = number(e, "initial", "epsilon_schedule.initial", c.epsilon_schedule.initial);
        c.epsilon_schedule.decay = number(e, "decay", "epsilon_schedule.decay", c.epsilon_schedule.decay);
        c.epsilon_schedule.floor = number(e, "floor", "epsilon_schedule.floor", c.epsilon_schedule.floor);
    }
    require(c.epsilon_schedule.initial > 0.0, "epsilon_schedule.initial", "must be positive");
    require(c.epsilon_schedule.decay > 0.0 && c.epsilon_schedule.decay <= 1.0, "epsilon_schedule.decay",
            "must lie in (0, 1]");
    require(c.epsilon_schedule.floor >= 0.0, "epsilon_schedule.floor", "must be non-negative");

    std::string mode = text(doc, "mode", "mode", "sync");
    if (mode == "sync") c.mode = SimMode::sync;
    else if (mode == "async") c.mode = SimMode::async;
    else throw ConfigError("mode", "expected \"sync\" or \"async\"");

    if (doc.contains("clock_speeds")) {
        const json& e = object_at(doc, "clock_speeds", "clock_speeds");
        only_keys(e, "clock_speeds", {"low", "high"});
        c.clock_speeds.low = number(e, "low", "clock_speeds.low", c.clock_speeds.low);
        c.clock_speeds.high = number(e, "high", "clock_speeds.high", c.clock_speeds.high);
    }
    require(c.clock_speeds.low >= 0.9 && c.clock_speeds.low <= c.clock_speeds.high && c.clock_speeds.high <= 1.0,
            "clock_speeds", "need 0.9 <= low <= high <= 1");

    if (doc.contains("noise")) {
        const json& e = object_at(doc, "noise", "noise");
        only_keys(e, "noise", {"dist_rel", "dir_deg"});
        c.noise.dist_rel = number(e, "dist_rel", "noise.dist_rel", 0.0);
        c.noise.dir_deg = number(e, "dir_deg", "noise.dir_deg", 0.0);
    }
    require(c.noise.dist_rel >= 0.0 && c.noise.dist_rel < 1.0, "noise.dist_rel", "must lie in [0, 1)");
    require(c.noise.dir_deg >= 0.0 && c.noise.dir_deg <= 180.0, "noise.dir_deg", "must lie in [0, 180]");

    if (doc.contains("robot_model")) {
        const json& e = object_at(doc, "robot_model", "robot_model");
        only_keys(e, "robot_model", {"type", "radius"});
        std::string type = text(e, "type", "robot_model.type", "point");
        if (type == "point") {
            require(!e.contains("radius"), "robot_model.radius", "only meaningful for disk robots");
        } else if (type == "disk") {
            c.robot_model.disk = true;
            c.robot_model.radius = number(e, "radius", "robot_model.radius", c.robot_model.radius);
            require(c.robot_model.radius > 0.0, "robot_model.radius", "must be positive");
        } else {
            throw ConfigError("robot_model.type", "expected \"point\" or \"disk\"");
        }
    }

    if (doc.contains("reflex_slowdown")) {
        const json& e = object_at(doc, "reflex_slowdown", "reflex_slowdown");
        only_keys(e, "reflex_slowdown", {"dist_threshold", "factor"});
        c.reflex_slowdown.dist_threshold =
            number(e, "dist_threshold", "reflex_slowdown.dist_threshold", c.reflex_slowdown.dist_threshold);
        c.reflex_slowdown.factor = number(e, "factor", "reflex_slowdown.factor", c.reflex_slowdown.factor);
    }
    require(c.reflex_slowdown.dist_threshold >= 0.0, "reflex_slowdown.dist_threshold", "must be non-negative");
    require(c.reflex_slowdown.factor > 0.0 && c.reflex_slowdown.factor <= 1.0, "reflex_slowdown.factor",
            "must lie in (0, 1]");

    if (doc.contains("termination")) {
        const json& e = object_at(doc, "termination", "termination");
        only_keys(e, "termination", {"diameter_tol", "max_steps"});
        c.termination.diameter_tol = number(e, "diameter_tol", "termination.diameter_tol", c.termination.diameter_tol);
        c.termination.max_steps = integer(e, "max_steps", "termination.max_steps", c.termination.max_steps);
    }
    require(c.termination.diameter_tol > 0.0, "termination.diameter_tol", "must be positive");
    require(c.termination.max_steps >= 0, "termination.max_steps", "must be non-negative");

    std::string cg = text(doc, "constraint_graph", "constraint_graph", "sensing");
    if (cg == "sensing") c.constraint_graph = ConstraintGraph::sensing;
    else if (cg == "locally_cliqueless") c.constraint_graph = ConstraintGraph::locally_cliqueless;
    else throw ConfigError("constraint_graph", "expected \"sensing\" or \"locally_cliqueless\"");

    c.disk_polygon_sides = static_cast<int>(integer(doc, "disk_polygon_sides", "disk_polygon_sides", c.disk_polygon_sides));
    require(c.disk_polygon_sides >= 8 && c.disk_polygon_sides % 2 == 0, "disk_polygon_sides",
            "must be even and at least 8");
    c.chord_deviation = number(doc, "chord_deviation", "chord_deviation", c.chord_deviation);

    std::string ov = text(doc, "on_violation", "on_violation", "log");
    if (ov == "log") c.on_violation = OnViolation::log;
    else if (ov == "abort") c.on_violation = OnViolation::abort;
    else throw ConfigError("on_violation", "expected \"log\" or \"abort\"");

    if (doc.contains("checks")) {
        const json& e = object_at(doc, "checks", "checks");
        only_keys(e, "checks", {"lyapunov", "motion_sets"});
        c.checks.lyapunov = boolean(e, "lyapunov", "checks.lyapunov", c.checks.lyapunov);
        c.checks.motion_sets = boolean(e, "motion_sets", "checks.motion_sets", c.checks.motion_sets);
    }
    return c;
}

SimConfig load_config(const std::string& path) {
    json doc;
    try {
        doc = read_json_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError("", e.what());
    }
    return parse_config(doc, std::filesystem::path(path).parent_path().string());
}

json config_to_json(const SimConfig& c) {
    json j;
    if (c.environment_path.empty()) {
        json verts = json::array();
        for (const Point& p : c.environment.vertices) verts.push_back({p.x, p.y});
        j["environment"] = {{"vertices", verts}};
    } else {
        j["environment"] = c.environment_path;
    }
    j["n"] = c.n;
    j["seed"] = c.seed;
    if (c.initial_positions) {
        json pts = json::array();
        for (const Point& p : *c.initial_positions) pts.push_back({p.x, p.y});
        j["initial_positions"] = pts;
    } else {
        j["initial_positions"] = "random";
    }
    j["require_connected_start"] = c.require_connected_start;
    j["r"] = c.r;
    j["s_max"] = c.s_max;
    j["epsilon_schedule"] = {{"initial", c.epsilon_schedule.initial},
                             {"decay", c.epsilon_schedule.decay},
                             {"floor", c.epsilon_schedule.floor}};
    j["mode"] = c.mode == SimMode::sync ? "sync" : "async";
    j["clock_speeds"] = {{"low", c.clock_speeds.low}, {"high", c.clock_speeds.high}};
    j["noise"] = {{"dist_rel", c.noise.dist_rel}, {"dir_deg", c.noise.dir_deg}};
    if (c.robot_model.disk) j["robot_model"] = {{"type", "disk"}, {"radius", c.robot_model.radius}};
    else j["robot_model"] = {{"type", "point"}};
    j["reflex_slowdown"] = {{"dist_threshold", c.reflex_slowdown.dist_threshold}, {"factor", c.reflex_slowdown.factor}};
    j["termination"] = {{"diameter_tol", c.termination.diameter_tol}, {"max_steps", c.termination.max_steps}};
    j["constraint_graph"] = c.constraint_graph == ConstraintGraph::sensing ? "sensing" : "locally_cliqueless";
    j["disk_polygon_sides"] = c.disk_polygon_sides;
    j["chord_deviation"] = c.chord_deviation;
    j["on_violation"] = c.on_violation == OnViolation::log ? "log" : "abort";
    j["checks"] = {{"lyapunov", c.checks.lyapunov}, {"motion_sets", c.checks.motion_sets}};
    return j;
}

}  // namespace visrdv
