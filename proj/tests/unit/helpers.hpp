#pragma once

#include <random>
#include <string>
#include <vector>

#include "visrdv/geometry/contraction.hpp"
#include "visrdv/geometry/primitives.hpp"
#include "visrdv/io/environment_io.hpp"

namespace testing {

using namespace visrdv;

inline std::string data_path(const std::string& rel) { return std::string(VISRDV_DATA_DIR) + "/" + rel; }

inline Environment load_env(const std::string& name) {
    return load_environment(data_path("environments/" + name + ".json"));
}

inline Environment square_env() { return make_environment({{0, 0}, {10, 0}, {10, 10}, {0, 10}}); }
inline Environment lshape_env() { return make_environment({{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 20}, {0, 20}}); }

// Uniform point of the polygonal contracted region by rejection.
inline Point sample_in(const ContractedRegion& region, std::mt19937_64& gen) {
    BoundingBox box = bounding_box(region.polygon().points);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    for (;;) {
        Point p{ux(gen), uy(gen)};
        if (region.contains_approx(p)) return p;
    }
}

inline Point sample_box(const BoundingBox& box, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    return {ux(gen), uy(gen)};
}

// Crossing-number point-in-polygon, strict interior only, for cross-checks.
inline bool crossing_inside(const std::vector<Point>& poly, Point p) {
    bool in = false;
    for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point& a = poly[i];
        const Point& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

}  // namespace testing
