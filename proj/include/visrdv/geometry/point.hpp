#pragma once

#include <cmath>
#include <vector>

namespace visrdv {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point a) { return {-a.x, -a.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
inline Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double norm2(Point a) { return a.x * a.x + a.y * a.y; }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point left_normal(Point d) { return {-d.y, d.x}; }
inline Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double angle_of(Point d) { return std::atan2(d.y, d.x); }

inline Point normalized(Point a) {
    double n = norm(a);
    return n > 0.0 ? a / n : Point{0.0, 0.0};
}

inline Point rotate(Point a, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// Signed area of the triangle (a, b, c) times two; positive for a left turn.
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

// Lexicographic (x, then y) ordering.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

using Polyline = std::vector<Point>;

constexpr double kPi = 3.14159265358979323846;

// Reduce an angle to [0, 2*pi).
inline double wrap_two_pi(double a) {
    double r = a;
    if (r < -2.0 * kPi || r >= 4.0 * kPi) r = std::fmod(a, 2.0 * kPi);
    else if (r >= 2.0 * kPi) r -= 2.0 * kPi;
    if (r < 0.0) r += 2.0 * kPi;
    if (r >= 2.0 * kPi) r = 0.0;
    return r;
}

}  // namespace visrdv
