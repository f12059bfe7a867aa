#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace visrdv {

// Deterministic random source.  Draws are built from raw mt19937_64 output so
// sequences do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // Uniform on [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    // Symmetric draw on [-a, a]; exactly zero when a == 0 (no engine advance).
    double symmetric(double a) { return a == 0.0 ? 0.0 : uniform(-a, a); }

private:
    std::mt19937_64 eng_;
};

// Seed of a named stream: one per purpose ("placement", "clocks", "sensing",
// "actuation"), further keyed by initial condition and repeat so toggling one
// source leaves the others untouched.
std::uint64_t stream_seed(std::uint64_t base, std::string_view name, std::uint64_t a = 0, std::uint64_t b = 0);

inline Rng make_stream(std::uint64_t base, std::string_view name, std::uint64_t a = 0, std::uint64_t b = 0) {
    return Rng(stream_seed(base, name, a, b));
}

}  // namespace visrdv
