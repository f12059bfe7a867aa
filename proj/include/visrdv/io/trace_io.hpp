#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "visrdv/sim/engine.hpp"

namespace visrdv {

// Bad trace input; line is 1-based (0 when the file could not be opened).
class TraceFormatError : public std::runtime_error {
public:
    TraceFormatError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

// JSONL layout: the first line is {"environment": ..., "config": ...}, every
// following line is one frame.
nlohmann::json frame_to_json(const TraceFrame& f);
TraceFrame frame_from_json(const nlohmann::json& j);

void write_trace(const Trace& trace, std::ostream& out);
void save_trace(const Trace& trace, const std::string& path);
Trace read_trace(std::istream& in);
Trace load_trace(const std::string& path);

}  // namespace visrdv
