#include "visrdv/io/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "visrdv/io/environment_io.hpp"

namespace visrdv {

using nlohmann::json;

TraceFormatError::TraceFormatError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

json frame_to_json(const TraceFrame& f) {
    json pos = json::array();
    for (const Point& p : f.positions) pos.push_back({p.x, p.y});
    json edges = json::array();
    for (const Edge& e : f.edges) edges.push_back({e.first, e.second});
    json j;
    j["time"] = f.time;
    j["epsilon"] = f.epsilon;
    j["positions"] = pos;
    j["edges"] = edges;
    j["awake"] = f.awake;
    // JSON has no NaN
    j["v_perim"] = std::isnan(f.v_perim) ? json(nullptr) : json(f.v_perim);
    j["violations"] = f.violations;
    j["notes"] = f.notes;
    return j;
}

TraceFrame frame_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("frame must be an object");
    TraceFrame f;
    f.time = j.at("time").get<double>();
    f.epsilon = j.at("epsilon").get<double>();
    for (const json& p : j.at("positions")) {
        if (!p.is_array() || p.size() != 2) throw std::invalid_argument("position must be [x, y]");
        f.positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    int n = static_cast<int>(f.positions.size());
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be [i, j]");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("edge index out of range");
        f.edges.push_back({std::min(a, b), std::max(a, b)});
    }
    if (j.contains("awake")) f.awake = j["awake"].get<std::vector<int>>();
    if (j.contains("v_perim") && !j["v_perim"].is_null()) f.v_perim = j["v_perim"].get<double>();
    if (j.contains("violations")) f.violations = j["violations"].get<std::vector<std::string>>();
    if (j.contains("notes")) f.notes = j["notes"].get<std::vector<std::string>>();
    return f;
}

void write_trace(const Trace& trace, std::ostream& out) {
    json header;
    header["environment"] = environment_to_json(trace.environment);
    header["config"] = trace.config;
    out << header.dump() << '\n';
    for (const TraceFrame& f : trace.frames) out << frame_to_json(f).dump() << '\n';
}

void save_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_trace(trace, out);
    if (!out) throw std::runtime_error("error writing " + path);
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    double last_time = -INFINITY;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            if (!have_header) {
                if (!j.is_object() || !j.contains("environment"))
                    throw std::invalid_argument("expected a header with an environment");
                trace.environment = environment_from_json(j.at("environment"));
                trace.config = j.value("config", json::object());
                have_header = true;
                continue;
            }
            TraceFrame f = frame_from_json(j);
            if (f.time < last_time) throw std::invalid_argument("frame time goes backwards");
            last_time = f.time;
            trace.frames.push_back(std::move(f));
        } catch (const TraceFormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw TraceFormatError(line_no, e.what());
        }
    }
    if (!have_header) throw TraceFormatError(line_no, "empty trace");
    return trace;
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceFormatError(0, "cannot open " + path);
    return read_trace(in);
}

}  // namespace visrdv
