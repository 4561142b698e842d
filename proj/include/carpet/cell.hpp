#pragma once

#include "carpet/point2.hpp"
#include "carpet/rat.hpp"

#include <compare>
#include <string>

namespace carpet {

// M keeps the 8 ring cells of the 3x3 grid, N keeps all 9.
enum class Variant { M, N };

inline char variant_char(Variant v) { return v == Variant::M ? 'M' : 'N'; }

// Grid cell (column, row) of the 3x3 subdivision.
struct CellIndex {
    int i = 0;
    int j = 0;

    auto operator<=>(const CellIndex&) const = default;
};

inline bool cell_valid(Variant v, CellIndex c) {
    if (c.i < 0 || c.i > 2 || c.j < 0 || c.j > 2) return false;
    return !(v == Variant::M && c.i == 1 && c.j == 1);
}

inline std::string cell_str(CellIndex c) {
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

inline Point2 shrink(CellIndex c) {
    return {make_rat(c.i, 3), make_rat(c.j, 3)};
}

// Places z inside the scaled copy at cell c.
inline Point2 alpha(CellIndex c, const Point2& z) {
    return {make_rat(c.i, 3) + z.x / 3, make_rat(c.j, 3) + z.y / 3};
}

}  // namespace carpet
