#pragma once

#include "carpet/corecursive.hpp"
#include "carpet/hutchinson.hpp"
#include "carpet/lattice.hpp"
#include "carpet/rat.hpp"

#include <cstdio>
#include <string>

namespace carpet {

// All renderers emit integer (or fixed 6-decimal) coordinates in a viewBox
// of 3^level units, so output bytes are a pure function of the input.

namespace detail {

inline std::string svg_open(long long side) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(side) +
           " " + std::to_string(side) + "\">\n";
}

inline std::string fixed6(const Rat& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v.convert_to<double>());
    return buf;
}

}  // namespace detail

inline std::string svg_cells(const CellSet& s) {
    long long side = s.side();
    std::string out = detail::svg_open(side);
    out += "<rect width=\"" + std::to_string(side) + "\" height=\"" + std::to_string(side) +
           "\" fill=\"white\"/>\n";
    for (std::uint64_t c : s.cells) {
        auto [cx, cy] = decode_cell(s, c);
        long long y = side - 1 - cy;  // SVG y axis points down
        out += "<rect x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(y) +
               "\" width=\"1\" height=\"1\" fill=\"#1a1a1a\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

inline std::string svg_carpet(int p) { return svg_cells(iterate(unit_square_cells(), p)); }

inline std::string svg_lattice(const LatticeGraph& g) {
    long long side = g.side;
    std::string out = detail::svg_open(side);
    out += "<rect width=\"" + std::to_string(side) + "\" height=\"" + std::to_string(side) +
           "\" fill=\"white\"/>\n";
    auto line = [&](long long x1, long long y1, long long x2, long long y2) {
        out += "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(side - y1) +
               "\" x2=\"" + std::to_string(x2) + "\" y2=\"" + std::to_string(side - y2) +
               "\" stroke=\"#1a1a1a\" stroke-width=\"0.08\"/>\n";
    };
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        auto [a, b] = g.vpos[u];
        if (g.adj[u][0] >= 0) line(a, b, a + 1, b);
        if (g.adj[u][2] >= 0) line(a, b, a, b + 1);
    }
    out += "</svg>\n";
    return out;
}

// Carpet background at `depth` with the solved states as markers.
inline std::string svg_solution(const Coalgebra& c, int depth = 3) {
    if (c.interval) throw input_error("svg_solution: interval systems have no plane rendering");
    std::vector<Point2> sol = solve_square(c);
    CellSet bg = c.variant == Variant::M
                     ? iterate(unit_square_cells(), depth)
                     : subdivide_to(unit_square_cells(), depth);
    long long side = bg.side();
    std::string out = svg_cells(bg);
    out.erase(out.size() - 7);  // strip "</svg>\n", re-open below
    for (std::size_t i = 0; i < sol.size(); ++i) {
        Rat cx = sol[i].x * side;
        Rat cy = (1 - sol[i].y) * side;
        out += "<circle cx=\"" + detail::fixed6(cx) + "\" cy=\"" + detail::fixed6(cy) +
               "\" r=\"" + detail::fixed6(make_rat(side, 20)) +
               "\" fill=\"#c0392b\"/>\n";
        out += "<!-- " + c.names[i] + " = " + rat_str(sol[i].x) + "," + rat_str(sol[i].y) +
               " -->\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace carpet
