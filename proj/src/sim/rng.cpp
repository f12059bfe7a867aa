#include "visrdv/sim/rng.hpp"

namespace visrdv {

namespace {

// splitmix64 finaliser
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t base, std::string_view name, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::uint64_t s = mix(base);
    s = mix(s ^ h);
    s = mix(s ^ a);
    s = mix(s ^ (b + 0x5851f42d4c957f2dULL));
    return s;
}

}  // namespace visrdv
