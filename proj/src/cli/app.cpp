#include <ostream>

#include <CLI11.hpp>

#include "visrdv/cli/commands.hpp"

namespace visrdv::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Visibility-constrained rendezvous simulator"};
    app.require_subcommand(1);

    std::string env_path;
    auto* check = app.add_subcommand("check", "Validate an environment polygon");
    check->add_option("environment", env_path, "Environment JSON")->required();

    std::string run_config;
    RunOptions run_opts;
    std::uint64_t run_seed = 0;
    auto* run = app.add_subcommand("run", "Run one simulation");
    run->add_option("config", run_config, "Config JSON")->required();
    auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the config seed");
    run->add_option("--csv", run_opts.csv_path, "Metrics CSV output")->capture_default_str();
    run->add_option("--trace", run_opts.trace_path, "Trace JSONL output")->capture_default_str();

    std::string batch_config;
    BatchOptions batch_opts;
    std::uint64_t batch_seed = 0;
    auto* batch = app.add_subcommand("batch", "Run initial conditions x repeats");
    batch->add_option("config", batch_config, "Config JSON")->required();
    batch->add_option("--initial-conditions,-k", batch_opts.initial_conditions)->capture_default_str();
    batch->add_option("--repeats,-r", batch_opts.repeats)->capture_default_str();
    auto* batch_seed_opt = batch->add_option("--seed", batch_seed, "Override the config seed");
    batch->add_option("--csv", batch_opts.csv_path, "Metrics CSV output")->capture_default_str();
    batch->add_option("--trace-dir", batch_opts.trace_dir, "Also write one trace per run here");
    batch->add_option("--jobs,-j", batch_opts.jobs, "Worker threads (0: all cores)")->capture_default_str();

    std::string trace_path;
    RenderOptions render_opts;
    auto* render = app.add_subcommand("render", "Render trace frames to SVG");
    render->add_option("trace", trace_path, "Trace JSONL")->required();
    render->add_option("--out", render_opts.out_dir, "Output directory")->required();
    render->add_option("--every", render_opts.every, "Render every N-th frame")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    if (*check) return cmd_check(env_path, out, err);
    if (*run) {
        if (*run_seed_opt) run_opts.seed = run_seed;
        return cmd_run(run_config, run_opts, out, err);
    }
    if (*batch) {
        if (*batch_seed_opt) batch_opts.seed = batch_seed;
        return cmd_batch(batch_config, batch_opts, out, err);
    }
    return cmd_render(trace_path, render_opts, out, err);
}

}  // namespace visrdv::cli
