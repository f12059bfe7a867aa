#include "visrdv/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/primitives.hpp"
#include "visrdv/io/environment_io.hpp"
#include "visrdv/io/svg.hpp"
#include "visrdv/io/trace_io.hpp"

namespace visrdv::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* mode_name(SimMode m) { return m == SimMode::sync ? "sync" : "async"; }

bool contraction_ok(const Environment& env, double eps) {
    try {
        ContractedRegion region(env, eps);
        return true;
    } catch (const InvalidContraction&) {
        return false;
    }
}

std::vector<Point> ring_from_file(const std::string& path) {
    nlohmann::json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw std::runtime_error(path + ": expected an object with a \"vertices\" array");
    std::vector<Point> ring;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw std::runtime_error(path + ": each vertex must be a pair of numbers");
        ring.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return ring;
}

void open_for_write(std::ofstream& f, const std::string& path) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    f.open(path);
    if (!f) throw std::runtime_error("cannot write " + path);
}

}  // namespace

CheckReport check_environment(const std::vector<Point>& ring) {
    CheckReport rep;
    rep.vertices = static_cast<int>(ring.size());
    rep.input_ccw = ring.size() >= 3 && signed_area(ring) > 0;
    Environment env;
    try {
        env = make_environment(ring);
    } catch (const InvalidEnvironment& e) {
        rep.error = e.what();
        return rep;
    }
    rep.simple = true;
    rep.area = std::abs(signed_area(env.vertices));
    rep.reflex = env.reflex_count();

    // Every valid epsilon lies below half the smaller bounding-box side.
    BoundingBox box = bounding_box(env.vertices);
    double lo = 0.0;
    double hi = 0.5 * std::min(box.hi.x - box.lo.x, box.hi.y - box.lo.y);
    if (contraction_ok(env, hi)) {
        rep.max_epsilon = hi;
        return rep;
    }
    for (int it = 0; it < 48; ++it) {
        double mid = 0.5 * (lo + hi);
        if (contraction_ok(env, mid)) lo = mid;
        else hi = mid;
    }
    rep.max_epsilon = lo;
    return rep;
}

std::string csv_row(const std::string& run_id, std::uint64_t seed, SimMode mode, const Metrics& m) {
    std::string s = run_id + "," + std::to_string(seed) + "," + mode_name(mode) + "," + num(m.mean_steps) + "," +
                    num(m.edges_preserved_fraction) + "," + std::to_string(m.components_initial) + "," +
                    std::to_string(m.components_final) + ",";
    if (m.cohesive_groups_final) s += std::to_string(*m.cohesive_groups_final);
    return s;
}

std::vector<std::string> summary_rows(const std::string& label, std::uint64_t seed, SimMode mode,
                                      const std::vector<Metrics>& runs) {
    const int cols = 5;
    std::vector<std::vector<double>> vals(cols);
    bool cohesive = !runs.empty();
    for (const Metrics& m : runs) {
        vals[0].push_back(m.mean_steps);
        vals[1].push_back(m.edges_preserved_fraction);
        vals[2].push_back(m.components_initial);
        vals[3].push_back(m.components_final);
        if (m.cohesive_groups_final) vals[4].push_back(*m.cohesive_groups_final);
        else cohesive = false;
    }
    std::string mean_row = "mean_" + label + "," + std::to_string(seed) + "," + mode_name(mode);
    std::string std_row = "std_" + label + "," + std::to_string(seed) + "," + mode_name(mode);
    for (int c = 0; c < cols; ++c) {
        if (c == 4 && !cohesive) {
            mean_row += ",";
            std_row += ",";
            continue;
        }
        const auto& v = vals[c];
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= std::max<size_t>(v.size(), 1);
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        double sd = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
        mean_row += "," + num(mean);
        std_row += "," + num(sd);
    }
    return {mean_row, std_row};
}

std::vector<int> selected_frames(int frame_count, int every) {
    std::vector<int> out;
    if (every < 1) every = 1;
    for (int k = 0; k < frame_count; k += every) out.push_back(k);
    return out;
}

int cmd_check(const std::string& env_path, std::ostream& out, std::ostream& err) {
    std::vector<Point> ring;
    try {
        ring = ring_from_file(env_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    CheckReport rep = check_environment(ring);
    out << "vertices: " << rep.vertices << '\n';
    if (!rep.simple) {
        out << "simple: no (" << rep.error << ")\n";
        return 1;
    }
    out << "simple: yes\n";
    out << "orientation: " << (rep.input_ccw ? "counterclockwise" : "clockwise (reversed on load)") << '\n';
    out << "area: " << num(rep.area) << '\n';
    out << "reflex vertices (kappa): " << rep.reflex << '\n';
    out << "admissible epsilon: 0 < eps < " << num(rep.max_epsilon) << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    SimConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    if (opts.seed) cfg.seed = *opts.seed;
    try {
        RunResult res = run_simulation(cfg);
        std::ofstream csv;
        open_for_write(csv, opts.csv_path);
        csv << kCsvHeader << '\n' << csv_row("0", cfg.seed, cfg.mode, res.metrics) << '\n';
        save_trace(res.trace, opts.trace_path);
        out << "status: " << status_name(res.status) << '\n';
        out << "steps: " << res.steps << '\n';
        out << "violations: " << res.violation_count << '\n';
        out << "mean steps per robot: " << num(res.metrics.mean_steps) << '\n';
        out << "edges preserved: " << num(res.metrics.edges_preserved_fraction) << '\n';
        out << "components: " << res.metrics.components_initial << " -> " << res.metrics.components_final << '\n';
        if (res.metrics.cohesive_groups_final) out << "cohesive groups: " << *res.metrics.cohesive_groups_final << '\n';
        return exit_code(res.status);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_batch(const std::string& config_path, const BatchOptions& opts, std::ostream& out, std::ostream& err) {
    SimConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    if (opts.initial_conditions < 1 || opts.repeats < 1) {
        err << "error: --initial-conditions and --repeats must be positive\n";
        return 1;
    }
    if (opts.seed) cfg.seed = *opts.seed;

    const int K = opts.initial_conditions, R = opts.repeats, total = K * R;
    std::vector<RunResult> results(total);
    std::vector<std::string> failures(total);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k; (k = next.fetch_add(1)) < total;) {
            try {
                RunKey key{static_cast<std::uint64_t>(k / R), static_cast<std::uint64_t>(k % R)};
                results[k] = run_simulation(cfg, key);
                if (!opts.trace_dir.empty()) {
                    char name[64];
                    std::snprintf(name, sizeof name, "run_ic%03d_rep%03d.jsonl", k / R, k % R);
                    save_trace(results[k].trace, (fs::path(opts.trace_dir) / name).string());
                }
                results[k].trace.frames.clear();
            } catch (const std::exception& e) {
                failures[k] = e.what();
            }
        }
    };
    try {
        if (!opts.trace_dir.empty()) fs::create_directories(opts.trace_dir);
        int jobs = opts.jobs > 0 ? opts.jobs : static_cast<int>(std::thread::hardware_concurrency());
        jobs = std::clamp(jobs, 1, total);
        std::vector<std::thread> pool;
        for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    for (int k = 0; k < total; ++k)
        if (!failures[k].empty()) {
            err << "error in run " << k << ": " << failures[k] << '\n';
            return 1;
        }

    std::ofstream csv;
    try {
        open_for_write(csv, opts.csv_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    csv << kCsvHeader << '\n';
    std::vector<Metrics> all;
    int converged = 0, limited = 0, aborted = 0;
    for (int ic = 0; ic < K; ++ic) {
        std::vector<Metrics> group;
        for (int rep = 0; rep < R; ++rep) {
            const RunResult& r = results[ic * R + rep];
            csv << csv_row("ic" + std::to_string(ic) + "_rep" + std::to_string(rep), cfg.seed, cfg.mode, r.metrics)
                << '\n';
            group.push_back(r.metrics);
            all.push_back(r.metrics);
            converged += r.status == RunStatus::converged;
            limited += r.status == RunStatus::step_limit;
            aborted += r.status == RunStatus::aborted;
        }
        for (const auto& row : summary_rows("ic" + std::to_string(ic), cfg.seed, cfg.mode, group)) csv << row << '\n';
    }
    for (const auto& row : summary_rows("all", cfg.seed, cfg.mode, all)) csv << row << '\n';

    out << "runs: " << total << " (converged " << converged << ", step limit " << limited << ", aborted " << aborted
        << ")\n";
    out << "metrics: " << opts.csv_path << '\n';
    if (aborted) return exit_code(RunStatus::aborted);
    if (limited) return exit_code(RunStatus::step_limit);
    return 0;
}

int cmd_render(const std::string& trace_path, const RenderOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        Trace trace = load_trace(trace_path);
        fs::create_directories(opts.out_dir);
        int written = 0;
        for (int k : selected_frames(static_cast<int>(trace.frames.size()), opts.every)) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%05d.svg", k);
            std::ofstream f;
            open_for_write(f, (fs::path(opts.out_dir) / name).string());
            f << render_frame_svg(trace, k);
            ++written;
        }
        out << "wrote " << written << " frames to " << opts.out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace visrdv::cli
