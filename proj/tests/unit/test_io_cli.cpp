#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "visrdv/cli/commands.hpp"
#include "visrdv/io/svg.hpp"
#include "visrdv/io/trace_io.hpp"

using namespace visrdv;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("visrdv_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "visrdv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

Trace small_trace(int frames) {
    Trace t;
    t.environment = square_env();
    t.config = {{"robot_model", {{"type", "point"}}}};
    for (int k = 0; k < frames; ++k) {
        TraceFrame f;
        f.time = k;
        f.epsilon = 1.0;
        f.positions = {{2.0 + 0.01 * k, 2.0}, {8.0, 8.0 - 0.01 * k}};
        f.edges = {{0, 1}};
        f.v_perim = 2 * dist(f.positions[0], f.positions[1]);
        t.frames.push_back(f);
    }
    return t;
}

}  // namespace

TEST_CASE("trace round trip is exact") {
    Trace t = small_trace(3);
    t.frames[1].v_perim = std::numeric_limits<double>::quiet_NaN();
    t.frames[2].violations = {"component count increased"};
    t.frames[2].notes = {"robot 1: held"};
    t.frames[2].awake = {1};
    t.frames[0].positions[0] = {0.1 + 0.2, 1.0 / 3.0};
    std::stringstream ss;
    write_trace(t, ss);
    Trace back = read_trace(ss);
    REQUIRE(back.frames.size() == 3);
    CHECK(back.environment.vertices == t.environment.vertices);
    CHECK(back.config == t.config);
    for (int k = 0; k < 3; ++k) {
        CHECK(back.frames[k].positions == t.frames[k].positions);
        CHECK(back.frames[k].edges == t.frames[k].edges);
        CHECK(back.frames[k].awake == t.frames[k].awake);
        CHECK(back.frames[k].violations == t.frames[k].violations);
        CHECK(back.frames[k].notes == t.frames[k].notes);
    }
    CHECK(std::isnan(back.frames[1].v_perim));
    CHECK(back.frames[2].v_perim == t.frames[2].v_perim);
}

TEST_CASE("malformed trace lines report their line number") {
    std::stringstream ok;
    write_trace(small_trace(3), ok);
    auto lines = lines_of(ok.str());
    auto bad_at = [&](int line, const std::string& replacement) {
        std::stringstream ss;
        for (int k = 0; k < static_cast<int>(lines.size()); ++k) ss << (k + 1 == line ? replacement : lines[k]) << '\n';
        try {
            read_trace(ss);
        } catch (const TraceFormatError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(bad_at(3, "{not json") == 3);
    CHECK(bad_at(2, "{\"time\": 0}") == 2);
    CHECK(bad_at(4, "{\"time\":0,\"epsilon\":1,\"positions\":[[0,0]],\"edges\":[[0,5]]}") == 4);
    CHECK(bad_at(1, "[]") == 1);
    std::stringstream empty;
    CHECK_THROWS_AS(read_trace(empty), TraceFormatError);
}

TEST_CASE("frame selection") {
    CHECK(cli::selected_frames(1, 1) == std::vector<int>{0});
    CHECK(cli::selected_frames(100, 10).size() == 10);
    CHECK(cli::selected_frames(100, 10).back() == 90);
    CHECK(cli::selected_frames(5, 2) == std::vector<int>{0, 2, 4});
}

TEST_CASE("SVG output is deterministic and matches the frozen file") {
    Trace t = load_trace(std::string(VISRDV_GOLDEN_DIR) + "/lshape_pair.jsonl");
    REQUIRE(t.frames.size() > 5);
    std::string svg = render_frame_svg(t, 5);
    CHECK(svg == render_frame_svg(t, 5));
    CHECK(svg == slurp(fs::path(VISRDV_GOLDEN_DIR) / "lshape_pair_frame5.svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("metrics CSV rows") {
    Metrics m;
    m.mean_steps = 12.5;
    m.edges_preserved_fraction = 0.75;
    m.components_initial = 2;
    m.components_final = 1;
    CHECK(cli::csv_row("3", 7, SimMode::async, m) == "3,7,async,12.5,0.75,2,1,");
    m.cohesive_groups_final = 4;
    CHECK(cli::csv_row("3", 7, SimMode::sync, m) == "3,7,sync,12.5,0.75,2,1,4");
    Metrics a = m, b = m;
    a.mean_steps = 10;
    b.mean_steps = 20;
    auto rows = cli::summary_rows("all", 7, SimMode::sync, {a, b});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "mean_all,7,sync,15,0.75,2,1,4");
    CHECK(rows[1] == "std_all,7,sync,7.07107,0,0,0,0");
    CHECK(std::string(cli::kCsvHeader) ==
          "run_id,seed,mode,mean_steps,edges_preserved,components_initial,components_final,cohesive_groups");
}

TEST_CASE("check command") {
    fs::path dir = scratch_dir("check");
    std::string out;
    CHECK(invoke({"check", data_path("environments/square.json")}, &out) == 0);
    CHECK(out.find("kappa): 0") != std::string::npos);
    CHECK(invoke({"check", data_path("environments/lshape.json")}, &out) == 0);
    CHECK(out.find("kappa): 1") != std::string::npos);
    {
        std::ofstream f(dir / "bowtie.json");
        f << R"({"vertices": [[0,0],[2,2],[2,0],[0,2]]})";
    }
    CHECK(invoke({"check", (dir / "bowtie.json").string()}, &out) != 0);
    CHECK(out.find("simple: no") != std::string::npos);
    CHECK(invoke({"check", (dir / "missing.json").string()}) != 0);
    cli::CheckReport sq = cli::check_environment({{0, 0}, {0, 10}, {10, 10}, {10, 0}});
    CHECK(sq.simple);
    CHECK_FALSE(sq.input_ccw);
    CHECK(sq.max_epsilon > 4.99);
    CHECK(sq.max_epsilon <= 5.0);
}

TEST_CASE("run command writes CSV and trace, then render draws them") {
    fs::path dir = scratch_dir("run");
    std::string out, err;
    int code = invoke({"run", data_path("configs/lshape_pair.json"), "--csv", (dir / "m.csv").string(), "--trace",
                    (dir / "t.jsonl").string(), "--seed", "9"},
                   &out, &err);
    CHECK(code == 0);
    auto rows = lines_of(slurp(dir / "m.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == cli::kCsvHeader);
    CHECK(rows[1].rfind("0,9,sync,", 0) == 0);
    Trace t = load_trace((dir / "t.jsonl").string());
    CHECK(t.frames.size() > 1);

    CHECK(invoke({"render", (dir / "t.jsonl").string(), "--out", (dir / "svg").string(), "--every", "5"}) == 0);
    size_t files = std::distance(fs::directory_iterator(dir / "svg"), fs::directory_iterator{});
    CHECK(files == cli::selected_frames(static_cast<int>(t.frames.size()), 5).size());
    CHECK(fs::exists(dir / "svg" / "frame_00000.svg"));
}

TEST_CASE("run command: coincident start and schema errors") {
    fs::path dir = scratch_dir("run_err");
    {
        std::ofstream f(dir / "same.json");
        f << R"({"environment": {"vertices": [[0,0],[10,0],[10,10],[0,10]]}, "initial_positions": [[5,5],[5,5]]})";
    }
    std::string out, err;
    CHECK(invoke({"run", (dir / "same.json").string(), "--csv", (dir / "a.csv").string(), "--trace",
               (dir / "a.jsonl").string()},
              &out) == 0);
    CHECK(out.find("steps: 0") != std::string::npos);
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"environment": {"vertices": [[0,0],[10,0],[10,10],[0,10]]}, "epsilon_schedule": {"decay": 2}})";
    }
    CHECK(invoke({"run", (dir / "bad.json").string()}, &out, &err) != 0);
    CHECK(err.find("epsilon_schedule.decay") != std::string::npos);
    {
        std::ofstream f(dir / "limit.json");
        f << R"({"environment": {"vertices": [[0,0],[10,0],[10,10],[0,10]]}, "initial_positions": [[3.5,3.5],[6.5,6.5]],
                 "termination": {"max_steps": 2}})";
    }
    CHECK(invoke({"run", (dir / "limit.json").string(), "--csv", (dir / "b.csv").string(), "--trace",
               (dir / "b.jsonl").string()}) == 2);
}

TEST_CASE("batch command: per-run rows, per-IC and overall summaries") {
    fs::path dir = scratch_dir("batch");
    {
        std::ofstream f(dir / "cfg.json");
        f << R"({"environment": {"vertices": [[0,0],[20,0],[20,10],[10,10],[10,20],[0,20]]}, "n": 4,
                 "epsilon_schedule": {"initial": 1}, "r": 15})";
    }
    std::string out;
    int code = invoke({"batch", (dir / "cfg.json").string(), "--initial-conditions", "2", "--repeats", "2", "--csv",
                    (dir / "b.csv").string(), "--jobs", "2"},
                   &out);
    CHECK(code == 0);
    auto rows = lines_of(slurp(dir / "b.csv"));
    // header, 2 x (2 runs + mean + std), overall mean + std
    REQUIRE(rows.size() == 1 + 2 * 4 + 2);
    CHECK(rows[1].rfind("ic0_rep0,", 0) == 0);
    CHECK(rows[3].rfind("mean_ic0,", 0) == 0);
    CHECK(rows[9].rfind("mean_all,", 0) == 0);
    // noiseless: repeats of one initial condition agree
    CHECK(rows[1].substr(rows[1].find(',')) == rows[2].substr(rows[2].find(',')));
    CHECK(rows[5].substr(rows[5].find(',')) == rows[6].substr(rows[6].find(',')));
    CHECK(invoke({"batch", (dir / "cfg.json").string(), "-k", "1", "-r", "1", "--csv", (dir / "c.csv").string()}) == 0);
    CHECK(lines_of(slurp(dir / "c.csv")).size() == 1 + 3 + 2);
}

TEST_CASE("render rejects broken traces with the line number") {
    fs::path dir = scratch_dir("render_bad");
    {
        std::ofstream f(dir / "t.jsonl");
        std::stringstream ss;
        write_trace(small_trace(2), ss);
        f << ss.str() << "{oops\n";
    }
    std::string err;
    CHECK(invoke({"render", (dir / "t.jsonl").string(), "--out", (dir / "svg").string()}, nullptr, &err) != 0);
    CHECK(err.find("line 4") != std::string::npos);
    CHECK(invoke({"render", (dir / "t.jsonl").string()}) != 0);
}
