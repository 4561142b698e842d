#pragma once

#include "carpet/cell.hpp"
#include "carpet/lattice.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/report.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace carpet {

// Finite union of ternary-aligned closed cells of U0 at one level.  A cell
// (cx, cy) covers [cx,cx+1]/3^p x [cy,cy+1]/3^p and is encoded cx*3^p+cy.
struct CellSet {
    int level = 0;
    std::vector<std::uint64_t> cells;  // sorted, unique, nonempty

    long long side() const {
        long long s = 1;
        for (int i = 0; i < level; ++i) s *= 3;
        return s;
    }
    bool operator==(const CellSet&) const = default;
};

inline CellSet unit_square_cells() { return {0, {0}}; }

inline CellSet make_cellset(int level, std::vector<std::uint64_t> cells) {
    if (cells.empty()) throw input_error("cell set must be nonempty");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    CellSet s{level, std::move(cells)};
    for (std::uint64_t c : s.cells)
        if (c >= static_cast<std::uint64_t>(s.side() * s.side()))
            throw input_error("cell code out of range for level");
    return s;
}

inline std::pair<long long, long long> decode_cell(const CellSet& s, std::uint64_t code) {
    long long side = s.side();
    return {static_cast<long long>(code) / side, static_cast<long long>(code) % side};
}

// One application of the 8-map system: every cell is copied into the eight
// kept positions of the next level.
inline CellSet sigma_step(const CellSet& a, std::size_t cell_limit = 1u << 24) {
    if (a.cells.size() * 8 > cell_limit) throw limit_error("sigma_step: cell limit exceeded");
    CellSet out;
    out.level = a.level + 1;
    long long side = a.side();
    long long big = side * 3;
    out.cells.reserve(a.cells.size() * 8);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == 1 && j == 1) continue;
            for (std::uint64_t c : a.cells) {
                long long cx = static_cast<long long>(c) / side + i * side;
                long long cy = static_cast<long long>(c) % side + j * side;
                out.cells.push_back(static_cast<std::uint64_t>(cx * big + cy));
            }
        }
    }
    std::sort(out.cells.begin(), out.cells.end());
    return out;
}

inline CellSet iterate(const CellSet& a, int p, std::size_t cell_limit = 1u << 24) {
    if (p < 0) throw input_error("iterate: negative power");
    CellSet out = a;
    for (int t = 0; t < p; ++t) out = sigma_step(out, cell_limit);
    return out;
}

// The same set expressed at a finer level (every cell split into 9^(q-p)).
inline CellSet subdivide_to(const CellSet& a, int q, std::size_t cell_limit = 1u << 24) {
    if (q < a.level) throw input_error("subdivide_to: coarser than source");
    long long f = 1;
    for (int i = a.level; i < q; ++i) f *= 3;
    if (a.cells.size() * static_cast<std::size_t>(f * f) > cell_limit)
        throw limit_error("subdivide_to: cell limit exceeded");
    long long side = a.side();
    long long big = side * f;
    std::vector<std::uint64_t> cells;
    cells.reserve(a.cells.size() * static_cast<std::size_t>(f * f));
    for (std::uint64_t c : a.cells) {
        long long cx = static_cast<long long>(c) / side * f;
        long long cy = static_cast<long long>(c) % side * f;
        for (long long dx = 0; dx < f; ++dx)
            for (long long dy = 0; dy < f; ++dy)
                cells.push_back(static_cast<std::uint64_t>((cx + dx) * big + cy + dy));
    }
    std::sort(cells.begin(), cells.end());
    return {q, std::move(cells)};
}

// A subset of B, compared at the finer of the two levels.
inline bool cellset_subset(const CellSet& a, const CellSet& b) {
    int q = std::max(a.level, b.level);
    CellSet fa = subdivide_to(a, q);
    CellSet fb = subdivide_to(b, q);
    return std::includes(fb.cells.begin(), fb.cells.end(), fa.cells.begin(), fa.cells.end());
}

namespace detail {

inline std::vector<std::uint8_t> occupancy(const CellSet& a, int q) {
    long long f = 1;
    for (int i = a.level; i < q; ++i) f *= 3;
    long long side_a = a.side();
    long long side = side_a * f;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(side * side), 0);
    for (std::uint64_t c : a.cells) {
        long long cx = static_cast<long long>(c) / side_a * f;
        long long cy = static_cast<long long>(c) % side_a * f;
        for (long long dx = 0; dx < f; ++dx)
            for (long long dy = 0; dy < f; ++dy)
                occ[static_cast<std::size_t>((cx + dx) * side + cy + dy)] = 1;
    }
    return occ;
}

// Exact L1 distance (in grid units) from every grid corner to the nearest
// corner of an occupied cell; two-pass chamfer transform.
inline std::vector<std::int32_t> corner_l1_transform(const std::vector<std::uint8_t>& occ,
                                                     long long side) {
    long long gs = side + 1;
    const std::int32_t inf = std::numeric_limits<std::int32_t>::max() / 4;
    std::vector<std::int32_t> d(static_cast<std::size_t>(gs * gs), inf);
    for (long long cx = 0; cx < side; ++cx) {
        for (long long cy = 0; cy < side; ++cy) {
            if (!occ[static_cast<std::size_t>(cx * side + cy)]) continue;
            d[static_cast<std::size_t>(cy * gs + cx)] = 0;
            d[static_cast<std::size_t>(cy * gs + cx + 1)] = 0;
            d[static_cast<std::size_t>((cy + 1) * gs + cx)] = 0;
            d[static_cast<std::size_t>((cy + 1) * gs + cx + 1)] = 0;
        }
    }
    for (long long b = 0; b < gs; ++b) {
        for (long long a = 0; a < gs; ++a) {
            std::int32_t& v = d[static_cast<std::size_t>(b * gs + a)];
            if (a > 0) v = std::min(v, d[static_cast<std::size_t>(b * gs + a - 1)] + 1);
            if (b > 0) v = std::min(v, d[static_cast<std::size_t>((b - 1) * gs + a)] + 1);
        }
    }
    for (long long b = gs - 1; b >= 0; --b) {
        for (long long a = gs - 1; a >= 0; --a) {
            std::int32_t& v = d[static_cast<std::size_t>(b * gs + a)];
            if (a + 1 < gs) v = std::min(v, d[static_cast<std::size_t>(b * gs + a + 1)] + 1);
            if (b + 1 < gs) v = std::min(v, d[static_cast<std::size_t>((b + 1) * gs + a)] + 1);
        }
    }
    return d;
}

inline std::int32_t directed_sup(const std::vector<std::uint8_t>& occ_from,
                                 const std::vector<std::int32_t>& dt_to, long long side) {
    long long gs = side + 1;
    std::int32_t sup = 0;
    for (long long cx = 0; cx < side; ++cx) {
        for (long long cy = 0; cy < side; ++cy) {
            if (!occ_from[static_cast<std::size_t>(cx * side + cy)]) continue;
            for (auto [a, b] : {std::pair<long long, long long>{cx, cy},
                                {cx + 1, cy},
                                {cx, cy + 1},
                                {cx + 1, cy + 1}})
                sup = std::max(sup, dt_to[static_cast<std::size_t>(b * gs + a)]);
        }
    }
    return sup;
}

}  // namespace detail

struct HausdorffBounds {
    Rat lower;
    Rat upper;
};

// Certified bracket for the taxicab Hausdorff distance: the sup over the
// level-q corner samples is a lower bound, and every point of either set is
// within 3^-q of a sample, so lower + 2*3^-q is an upper bound.
inline HausdorffBounds hausdorff_taxi(const CellSet& a, const CellSet& b, int q, int q_max = 7) {
    int p = std::max(a.level, b.level);
    if (q < p) throw input_error("hausdorff_taxi: q below common level");
    if (q > q_max) throw limit_error("hausdorff_taxi: refinement level exceeds guard");
    auto occ_a = detail::occupancy(a, q);
    auto occ_b = detail::occupancy(b, q);
    long long side = 1;
    for (int i = 0; i < q; ++i) side *= 3;
    auto dt_b = detail::corner_l1_transform(occ_b, side);
    std::int32_t sup = detail::directed_sup(occ_a, dt_b, side);
    dt_b = detail::corner_l1_transform(occ_a, side);
    sup = std::max(sup, detail::directed_sup(occ_b, dt_b, side));
    Rat lower = make_rat(sup, pow3(q));
    return {lower, lower + make_rat(2, pow3(q))};
}

// Taxicab diameter of the set (max over sampled corners is exact here since
// the diameter of a union of cells is attained at cell corners).
inline Rat cellset_diameter_taxi(const CellSet& a) {
    long long side = a.side();
    long long lo_x = side, hi_x = 0, lo_y = side, hi_y = 0;
    for (std::uint64_t c : a.cells) {
        auto [cx, cy] = decode_cell(a, c);
        lo_x = std::min(lo_x, cx);
        hi_x = std::max(hi_x, cx + 1);
        lo_y = std::min(lo_y, cy);
        hi_y = std::max(hi_y, cy + 1);
    }
    return make_rat((hi_x - lo_x) + (hi_y - lo_y), pow3(a.level));
}

// The cell named by an index word, as a singleton set.
inline CellSet word_cell(const std::vector<CellIndex>& word) {
    long long cx = 0, cy = 0;
    for (const CellIndex& d : word) {
        cx = cx * 3 + d.i;
        cy = cy * 3 + d.j;
    }
    CellSet s;
    s.level = static_cast<int>(word.size());
    s.cells = {static_cast<std::uint64_t>(cx * s.side() + cy)};
    return s;
}

// sigma's fixed-point evidence at level p: stepping the p-th iterate gives
// the (p+1)-st, and the iterate enumeration matches the lattice kept cells.
inline Report fixed_point_check(const LatticeStore& store, int p) {
    Report rep;
    CellSet ap = iterate(unit_square_cells(), p);
    CellSet ap1 = iterate(unit_square_cells(), p + 1);
    rep.add("sigma(iterate^" + std::to_string(p) + ") == iterate^" + std::to_string(p + 1),
            sigma_step(ap) == ap1, std::to_string(ap1.cells.size()) + " cells");

    const LatticeGraph& g = store.get(p, Variant::M);
    std::vector<std::uint64_t> kept;
    for (long long cx = 0; cx < g.side; ++cx)
        for (long long cy = 0; cy < g.side; ++cy)
            if (g.cell_kept(cx, cy)) kept.push_back(static_cast<std::uint64_t>(cx * g.side + cy));
    rep.add("iterate^" + std::to_string(p) + " == lattice kept cells", ap.cells == kept,
            std::to_string(kept.size()) + " cells");
    return rep;
}

// Sampled comparison of the Euclidean and taxicab Hausdorff distances in
// squared form: Ht^2 <= 4 He^2 and He^2 <= 4 Ht^2 on the level-q corner
// samples.  Brute force over cells; intended for small sets.
inline Report hausdorff_he_ht_check(const CellSet& a, const CellSet& b, int q) {
    CellSet fa = subdivide_to(a, q);
    CellSet fb = subdivide_to(b, q);
    Int den = pow3(q);
    auto corners_of = [&](const CellSet& s) {
        std::vector<Point2> pts;
        for (std::uint64_t c : s.cells) {
            auto [cx, cy] = decode_cell(s, c);
            for (auto [dx, dy] :
                 {std::pair<int, int>{0, 0}, {1, 0}, {0, 1}, {1, 1}})
                pts.push_back({make_rat(cx + dx, den), make_rat(cy + dy, den)});
        }
        return pts;
    };
    auto clamp_to_cell = [&](const CellSet& s, std::uint64_t c, const Point2& p) {
        auto [cx, cy] = decode_cell(s, c);
        Rat lo_x = make_rat(cx, den), hi_x = make_rat(cx + 1, den);
        Rat lo_y = make_rat(cy, den), hi_y = make_rat(cy + 1, den);
        Rat x = p.x < lo_x ? lo_x : (p.x > hi_x ? hi_x : p.x);
        Rat y = p.y < lo_y ? lo_y : (p.y > hi_y ? hi_y : p.y);
        return Point2{x, y};
    };
    auto directed = [&](const CellSet& from, const CellSet& to, Rat& sup_t, Rat& sup_e2) {
        for (const Point2& p : corners_of(from)) {
            Rat best_t(-1), best_e2(-1);
            for (std::uint64_t c : to.cells) {
                Point2 n = clamp_to_cell(to, c, p);
                Rat t = taxicab(p, n);
                Rat e2 = euclid_sq(p, n);
                if (best_t < 0 || t < best_t) best_t = t;
                if (best_e2 < 0 || e2 < best_e2) best_e2 = e2;
            }
            if (best_t > sup_t) sup_t = best_t;
            if (best_e2 > sup_e2) sup_e2 = best_e2;
        }
    };
    Rat ht(0), he2(0);
    directed(fa, fb, ht, he2);
    directed(fb, fa, ht, he2);
    Report rep;
    bool ok = ht * ht <= 4 * he2 && he2 <= 4 * ht * ht;
    rep.add("He/Ht bilipschitz (squared form)", ok,
            "Ht=" + rat_str(ht) + " He^2=" + rat_str(he2));
    return rep;
}

inline std::string format_cellset(const CellSet& s) {
    std::string out = "cells " + std::to_string(s.level) + "\n";
    long long side = s.side();
    for (std::uint64_t c : s.cells) {
        long long cx = static_cast<long long>(c) / side;
        long long cy = static_cast<long long>(c) % side;
        if (s.level == 0) {
            out += "-\n";
            continue;
        }
        std::string word;
        long long px = cx, py = cy;
        std::vector<std::pair<int, int>> digits(static_cast<std::size_t>(s.level));
        for (int t = s.level - 1; t >= 0; --t) {
            digits[static_cast<std::size_t>(t)] = {static_cast<int>(px % 3),
                                                   static_cast<int>(py % 3)};
            px /= 3;
            py /= 3;
        }
        for (auto [i, j] : digits)
            word += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        out += word + "\n";
    }
    return out;
}

inline CellSet parse_cellset(const std::string& text) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string {
        if (pos >= text.size()) return {};
        std::size_t nl = text.find('\n', pos);
        std::string line =
            nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        return line;
    };
    std::string header = next_line();
    if (header.rfind("cells ", 0) != 0) throw parse_error("cell set: expected 'cells <level>'");
    int level;
    try {
        level = std::stoi(header.substr(6));
    } catch (const std::exception&) {
        throw parse_error("cell set: bad level in header");
    }
    if (level < 0 || level > 12) throw parse_error("cell set: level out of range");
    long long side = 1;
    for (int i = 0; i < level; ++i) side *= 3;
    std::vector<std::uint64_t> cells;
    while (pos < text.size()) {
        std::string line = next_line();
        if (line.empty() || line[0] == '#') continue;
        long long cx = 0, cy = 0;
        if (line != "-") {
            int count = 0;
            std::size_t i = 0;
            while (i < line.size()) {
                if (line[i] != '(' || i + 4 >= line.size() || line[i + 2] != ',' ||
                    line[i + 4] != ')' || line[i + 1] < '0' || line[i + 1] > '2' ||
                    line[i + 3] < '0' || line[i + 3] > '2')
                    throw parse_error("cell set: bad word '" + line + "'");
                cx = cx * 3 + (line[i + 1] - '0');
                cy = cy * 3 + (line[i + 3] - '0');
                i += 5;
                ++count;
            }
            if (count != level) throw parse_error("cell set: word length != level in '" + line + "'");
        } else if (level != 0) {
            throw parse_error("cell set: '-' word only valid at level 0");
        }
        cells.push_back(static_cast<std::uint64_t>(cx * side + cy));
    }
    return make_cellset(level, std::move(cells));
}

}  // namespace carpet
