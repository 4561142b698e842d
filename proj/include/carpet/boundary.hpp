#pragma once

#include "carpet/cell.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"

#include <utility>

namespace carpet {

// Point of the boundary square M0: at least one coordinate is 0 or 1.
struct BoundaryPoint {
    Rat x;
    Rat y;

    bool operator==(const BoundaryPoint&) const = default;
};

inline bool on_boundary(const Rat& x, const Rat& y) {
    if (x < 0 || x > 1 || y < 0 || y > 1) return false;
    return x == 0 || x == 1 || y == 0 || y == 1;
}

inline BoundaryPoint boundary_point(Rat x, Rat y) {
    if (!on_boundary(x, y))
        throw input_error("not on the boundary square: (" + rat_str(x) + "," + rat_str(y) + ")");
    return {std::move(x), std::move(y)};
}

inline Point2 to_point(const BoundaryPoint& p) { return {p.x, p.y}; }

inline bool is_corner(const BoundaryPoint& p) {
    return (p.x == 0 || p.x == 1) && (p.y == 0 || p.y == 1);
}

inline std::string boundary_str(const BoundaryPoint& p) {
    return "(" + rat_str(p.x) + "," + rat_str(p.y) + ")";
}

// Arc-length parameter in [0,4) walking the boundary counterclockwise
// from (0,0): bottom, right, top reversed, left reversed.
inline Rat arc_param(const BoundaryPoint& p) {
    if (p.y == 0) return p.x;
    if (p.x == 1) return 1 + p.y;
    if (p.y == 1) return 3 - p.x;
    return 4 - p.y;  // p.x == 0, p.y in (0,1)
}

// Path metric on M0: distance along the shorter way around the square.
// Same side gives the interval distance, opposite sides route through a
// connecting side; bounded by 2.
inline Rat path_metric_m0(const BoundaryPoint& a, const BoundaryPoint& b) {
    Rat t = rat_abs(arc_param(a) - arc_param(b));
    Rat other = 4 - t;
    return t < other ? t : other;
}

// Level-1 decomposition of a boundary point: the canonical representative
// (m, p') with S(p) = m (x) S(p').  Ties at the third-points go to the
// lexicographically smaller cell index; the scheme is the same for M and N.
inline std::pair<CellIndex, BoundaryPoint> side_embedding(Variant, const BoundaryPoint& p) {
    const Rat third = make_rat(1, 3);
    const Rat two_thirds = make_rat(2, 3);
    auto split = [&](const Rat& r) -> std::pair<int, Rat> {
        if (r <= third) return {0, r * 3};
        if (r <= two_thirds) return {1, r * 3 - 1};
        return {2, r * 3 - 2};
    };
    if (p.y == 0) {
        auto [c, r] = split(p.x);
        return {{c, 0}, {r, Rat(0)}};
    }
    if (p.y == 1) {
        auto [c, r] = split(p.x);
        return {{c, 2}, {r, Rat(1)}};
    }
    if (p.x == 0) {
        auto [c, r] = split(p.y);
        return {{0, c}, {Rat(0), r}};
    }
    auto [c, r] = split(p.y);  // p.x == 1
    return {{2, c}, {Rat(1), r}};
}

}  // namespace carpet
