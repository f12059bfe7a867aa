#pragma once

#include <string>

#include "visrdv/sim/engine.hpp"

namespace visrdv {

struct SvgStyle {
    double width_px = 800.0;
    double margin_px = 20.0;
};

// One frame as a standalone SVG: the environment, its contraction at the
// frame's epsilon, sensing edges and robots.  Output bytes depend only on the
// inputs.
std::string render_frame_svg(const Trace& trace, int frame, const SvgStyle& style = {});

}  // namespace visrdv
