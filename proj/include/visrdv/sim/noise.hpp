#pragma once

#include <vector>

#include "visrdv/geometry/environment.hpp"
#include "visrdv/sim/config.hpp"
#include "visrdv/sim/rng.hpp"

namespace visrdv {

// Where a sensor at `origin` believes `p` is: range scaled by 1 + e_dist and
// bearing rotated by e_theta.  Two draws per call (distance, then direction),
// skipped for a zero magnitude.
Point perceive_point(Rng& rng, Point origin, Point p, const NoiseConfig& noise);

// Displacement actually executed for the commanded step u.
Point apply_actuation_noise(Rng& rng, Point u, const NoiseConfig& noise);

struct PerceivedScene {
    Environment environment;
    bool environment_fallback = false;  // every perturbed outline was invalid
    std::vector<Point> robots;          // in the order given
};

// One perception at a wake: environment vertices within `range` of the
// observer and every listed robot are perturbed independently.  A perturbed
// outline that is not a simple polygon is redrawn up to `attempts` times,
// after which the true outline is used.
PerceivedScene apply_sensing_noise(Rng& rng, Point origin, const Environment& env, const std::vector<Point>& robots,
                                   const NoiseConfig& noise, double range, int attempts = 3);

}  // namespace visrdv
