#include "visrdv/io/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/primitives.hpp"

namespace visrdv {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

struct Mapper {
    BoundingBox box;
    double k = 1.0;
    double margin = 0.0;
    double height = 0.0;

    // SVG y grows downwards
    std::string x(double wx) const { return fmt(margin + (wx - box.lo.x) * k); }
    std::string y(double wy) const { return fmt(height - margin - (wy - box.lo.y) * k); }
};

std::string polygon_element(const std::vector<Point>& pts, const Mapper& m, const char* attrs) {
    std::string s = "<polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += m.x(pts[i].x) + "," + m.y(pts[i].y);
    }
    s += "\" ";
    s += attrs;
    s += "/>\n";
    return s;
}

}  // namespace

std::string render_frame_svg(const Trace& trace, int frame, const SvgStyle& style) {
    if (frame < 0 || frame >= static_cast<int>(trace.frames.size())) throw std::out_of_range("frame index");
    const TraceFrame& f = trace.frames[frame];
    const Environment& env = trace.environment;

    Mapper m;
    m.box = bounding_box(env.vertices);
    double w = std::max(m.box.hi.x - m.box.lo.x, 1e-12);
    double h = std::max(m.box.hi.y - m.box.lo.y, 1e-12);
    m.margin = style.margin_px;
    m.k = (style.width_px - 2 * style.margin_px) / w;
    m.height = h * m.k + 2 * style.margin_px;

    bool disk = false;
    double radius = 0.0;
    double chord = -1.0;
    const auto& cfg = trace.config;
    if (cfg.is_object()) {
        if (cfg.contains("robot_model") && cfg["robot_model"].value("type", "point") == "disk") {
            disk = true;
            radius = cfg["robot_model"].value("radius", 0.2);
        }
        chord = cfg.value("chord_deviation", -1.0);
    }
    double dot = disk ? radius * m.k : 3.0;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width_px) + "\" height=\"" + fmt(m.height) +
         "\" viewBox=\"0 0 " + fmt(style.width_px) + " " + fmt(m.height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += polygon_element(env.vertices, m, "fill=\"#e8e8e8\" stroke=\"black\" stroke-width=\"1.5\"");
    if (f.epsilon > 0) {
        try {
            ContractedRegion region(env, f.epsilon, {chord});
            s += polygon_element(region.polygon().points, m,
                                 "fill=\"#ffffff\" stroke=\"#888888\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"");
        } catch (const InvalidContraction&) {
            // nothing to draw for an epsilon the environment cannot take
        }
    }
    for (const Edge& e : f.edges) {
        Point a = f.positions.at(e.first), b = f.positions.at(e.second);
        s += "<line x1=\"" + m.x(a.x) + "\" y1=\"" + m.y(a.y) + "\" x2=\"" + m.x(b.x) + "\" y2=\"" + m.y(b.y) +
             "\" stroke=\"#3070c0\" stroke-width=\"0.6\"/>\n";
    }
    for (size_t i = 0; i < f.positions.size(); ++i) {
        const Point& p = f.positions[i];
        s += "<circle cx=\"" + m.x(p.x) + "\" cy=\"" + m.y(p.y) + "\" r=\"" + fmt(dot) +
             "\" fill=\"#d03030\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
    }
    s += "<text x=\"" + fmt(m.margin) + "\" y=\"" + fmt(m.margin * 0.75) +
         "\" font-family=\"monospace\" font-size=\"12\">t=" + fmt(f.time) + " eps=" + fmt(f.epsilon) +
         " robots=" + std::to_string(f.positions.size()) + "</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace visrdv
