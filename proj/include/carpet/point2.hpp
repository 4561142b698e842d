#pragma once

#include "carpet/rat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace carpet {

// Point of the unit square U0 = [0,1]^2.
struct Point2 {
    Rat x;
    Rat y;

    bool operator==(const Point2&) const = default;
};

inline bool in_unit_square(const Point2& p) {
    return p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1;
}

inline Point2 point2(Rat x, Rat y) {
    Point2 p{std::move(x), std::move(y)};
    if (!in_unit_square(p)) throw input_error("point outside [0,1]^2");
    return p;
}

inline std::string point_str(const Point2& p) {
    return "(" + rat_str(p.x) + "," + rat_str(p.y) + ")";
}

inline Rat taxicab(const Point2& p, const Point2& q) {
    return rat_abs(p.x - q.x) + rat_abs(p.y - q.y);
}

// Squared Euclidean distance; kept squared so the engine stays rational.
inline Rat euclid_sq(const Point2& p, const Point2& q) {
    Rat dx = p.x - q.x;
    Rat dy = p.y - q.y;
    return dx * dx + dy * dy;
}

struct BilipschitzSample {
    Point2 a;
    Point2 b;
    bool pass = false;
};

// Checks d_Taxi^2 <= 4 d_Euc^2 and d_Euc^2 <= 4 d_Taxi^2 on every pair,
// the squared form of the constant-2 equivalence of the two metrics.
inline std::vector<BilipschitzSample> verify_taxi_euclid_bilipschitz(
    const std::vector<std::pair<Point2, Point2>>& samples) {
    std::vector<BilipschitzSample> out;
    out.reserve(samples.size());
    for (const auto& [a, b] : samples) {
        Rat t = taxicab(a, b);
        Rat t2 = t * t;
        Rat e2 = euclid_sq(a, b);
        bool ok = t2 <= 4 * e2 && e2 <= 4 * t2;
        out.push_back({a, b, ok});
    }
    return out;
}

}  // namespace carpet
