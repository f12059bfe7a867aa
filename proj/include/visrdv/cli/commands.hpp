#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "visrdv/sim/engine.hpp"

namespace visrdv::cli {

// Frozen column order of the metrics CSV.
inline constexpr const char* kCsvHeader =
    "run_id,seed,mode,mean_steps,edges_preserved,components_initial,components_final,cohesive_groups";

struct CheckReport {
    bool simple = false;
    std::string error;
    bool input_ccw = false;
    int vertices = 0;
    int reflex = 0;
    double area = 0.0;
    double max_epsilon = 0.0;  // contractions are valid for epsilon below this
};

CheckReport check_environment(const std::vector<Point>& ring);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::string csv_path = "metrics.csv";
    std::string trace_path = "trace.jsonl";
};

struct BatchOptions {
    int initial_conditions = 10;
    int repeats = 20;
    std::optional<std::uint64_t> seed;
    std::string csv_path = "batch.csv";
    std::string trace_dir;  // empty: no traces
    int jobs = 0;           // 0: one per hardware thread
};

struct RenderOptions {
    std::string out_dir = "frames";
    int every = 1;
};

std::string csv_row(const std::string& run_id, std::uint64_t seed, SimMode mode, const Metrics& m);

// Summary rows (mean and sample standard deviation of the numeric columns)
// for a set of runs.
std::vector<std::string> summary_rows(const std::string& label, std::uint64_t seed, SimMode mode,
                                      const std::vector<Metrics>& runs);

// Frame indices written by render: 0, every, 2*every, ...
std::vector<int> selected_frames(int frame_count, int every);

// Each command prints to out/err and returns the process exit code.
int cmd_check(const std::string& env_path, std::ostream& out, std::ostream& err);
int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_batch(const std::string& config_path, const BatchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_render(const std::string& trace_path, const RenderOptions& opts, std::ostream& out, std::ostream& err);

// Argument parsing front end shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace visrdv::cli
