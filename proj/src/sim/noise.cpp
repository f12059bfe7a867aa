#include "visrdv/sim/noise.hpp"

namespace visrdv {

namespace {

Point distort(Rng& rng, Point d, const NoiseConfig& noise) {
    double scale = 1.0 + rng.symmetric(noise.dist_rel);
    double turn = rng.symmetric(noise.dir_deg) * kPi / 180.0;
    return rotate(d * scale, turn);
}

}  // namespace

Point perceive_point(Rng& rng, Point origin, Point p, const NoiseConfig& noise) {
    if (!noise.active()) return p;
    return origin + distort(rng, p - origin, noise);
}

Point apply_actuation_noise(Rng& rng, Point u, const NoiseConfig& noise) {
    if (!noise.active()) return u;
    return distort(rng, u, noise);
}

PerceivedScene apply_sensing_noise(Rng& rng, Point origin, const Environment& env, const std::vector<Point>& robots,
                                   const NoiseConfig& noise, double range, int attempts) {
    PerceivedScene out;
    out.environment = env;
    if (noise.active()) {
        bool ok = false;
        for (int a = 0; a < attempts && !ok; ++a) {
            std::vector<Point> verts = env.vertices;
            for (Point& v : verts)
                if (dist(v, origin) <= range) v = perceive_point(rng, origin, v, noise);
            try {
                out.environment = make_environment(std::move(verts));
                ok = true;
            } catch (const InvalidEnvironment&) {
            }
        }
        if (!ok) {
            out.environment = env;
            out.environment_fallback = true;
        }
    }
    out.robots.reserve(robots.size());
    for (const Point& p : robots) out.robots.push_back(perceive_point(rng, origin, p, noise));
    return out;
}

}  // namespace visrdv
