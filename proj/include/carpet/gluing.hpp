#pragma once

#include "carpet/boundary.hpp"
#include "carpet/cell.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace carpet {

// One boundary-segment identification between two adjacent scaled copies:
// b is the right- or up-neighbor of a, and the shared edge is identified
// pointwise with the same parameter r on both sides.
struct GlueSegment {
    CellIndex a;
    CellIndex b;

    bool horizontal() const { return b.i == a.i + 1; }
};

inline std::vector<GlueSegment> glue_segments(Variant v) {
    std::vector<GlueSegment> out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CellIndex c{i, j};
            if (!cell_valid(v, c)) continue;
            if (cell_valid(v, {i + 1, j})) out.push_back({c, {i + 1, j}});
            if (cell_valid(v, {i, j + 1})) out.push_back({c, {i, j + 1}});
        }
    }
    return out;  // 8 segments for M, 12 for N
}

// The identified pair of raw points at parameter r along a segment.
inline std::pair<std::pair<CellIndex, BoundaryPoint>, std::pair<CellIndex, BoundaryPoint>>
segment_points(const GlueSegment& seg, const Rat& r) {
    if (seg.horizontal())
        return {{seg.a, boundary_point(Rat(1), r)}, {seg.b, boundary_point(Rat(0), r)}};
    return {{seg.a, boundary_point(r, Rat(1))}, {seg.b, boundary_point(r, Rat(0))}};
}

using RawPoint = std::pair<CellIndex, BoundaryPoint>;

inline bool glue_related_in(const std::vector<GlueSegment>& segments, const RawPoint& a,
                            const RawPoint& b) {
    auto matches = [](const GlueSegment& s, const RawPoint& p, const RawPoint& q) {
        if (p.first != s.a || q.first != s.b) return false;
        if (s.horizontal()) return p.second.x == 1 && q.second.x == 0 && p.second.y == q.second.y;
        return p.second.y == 1 && q.second.y == 0 && p.second.x == q.second.x;
    };
    for (const auto& s : segments)
        if (matches(s, a, b) || matches(s, b, a)) return true;
    return false;
}

// Membership in the gluing relation proper (one level, symmetrized); the
// reflexive/transitive closure is what normalize quotients by.
inline bool glue_related(Variant v, const RawPoint& a, const RawPoint& b) {
    if (!cell_valid(v, a.first) || !cell_valid(v, b.first))
        throw input_error("glue_related: invalid cell index for variant");
    return glue_related_in(glue_segments(v), a, b);
}

// A point of M^k(x)M0 or N^k(x)M0 in canonical form: the lexicographically
// least index word among all representatives of its equivalence class.
// Any rational boundary tip is representable; distance queries additionally
// need ternary-rational tips so they can refine to corner level exactly.
struct Address {
    Variant variant = Variant::M;
    std::vector<CellIndex> word;
    BoundaryPoint tip{Rat(0), Rat(0)};

    int level() const { return static_cast<int>(word.size()); }
    bool operator==(const Address&) const = default;
};

inline Point2 eval_word(const std::vector<CellIndex>& word, const Point2& tip) {
    Int nx = 0, ny = 0;
    for (const CellIndex& c : word) {
        nx = nx * 3 + c.i;
        ny = ny * 3 + c.j;
    }
    Int den = pow3(static_cast<int>(word.size()));
    return {(Rat(nx) + tip.x) / Rat(den), (Rat(ny) + tip.y) / Rat(den)};
}

inline Point2 eval(const Address& a) { return eval_word(a.word, to_point(a.tip)); }

namespace detail {

// Lexicographically least digit word for z at the given level, with the
// residual after the last digit landing on the boundary square.  Backtracks
// over the (at most four) cells containing z at each level.
inline bool least_digits(Variant v, const Point2& z, int remaining, std::vector<CellIndex>& word,
                         Point2& tip) {
    if (remaining == 0) {
        if (!on_boundary(z.x, z.y)) return false;
        tip = z;
        return true;
    }
    Rat tx = z.x * 3, ty = z.y * 3;
    for (int i = 0; i < 3; ++i) {
        if (tx < i || tx > i + 1) continue;
        for (int j = 0; j < 3; ++j) {
            if (!cell_valid(v, {i, j})) continue;
            if (ty < j || ty > j + 1) continue;
            word.push_back({i, j});
            Point2 z2{tx - i, ty - j};
            if (least_digits(v, z2, remaining - 1, word, tip)) return true;
            word.pop_back();
        }
    }
    return false;
}

}  // namespace detail

// Canonical address of a point of U0 at the given level; fails if the point
// admits no level-k decomposition (off the grid lines, or inside a hole for
// variant M).
inline Address point_address(Variant v, const Point2& z, int level) {
    if (!in_unit_square(z)) throw input_error("point_address: point outside U0");
    if (level < 0) throw input_error("point_address: negative level");
    std::vector<CellIndex> word;
    word.reserve(static_cast<std::size_t>(level));
    Point2 tip{Rat(0), Rat(0)};
    if (!detail::least_digits(v, z, level, word, tip))
        throw input_error("point " + point_str(z) + " has no level-" + std::to_string(level) +
                          " address for variant " + std::string(1, variant_char(v)));
    return {v, std::move(word), boundary_point(tip.x, tip.y)};
}

// Canonical representative of a raw (word, tip) pair.  Idempotent, and
// eval(normalize(a)) == eval(a).
inline Address normalize(Variant v, const std::vector<CellIndex>& word, const BoundaryPoint& tip) {
    for (const CellIndex& c : word)
        if (!cell_valid(v, c))
            throw input_error("normalize: invalid cell " + cell_str(c) + " for variant " +
                              std::string(1, variant_char(v)));
    return point_address(v, eval_word(word, to_point(tip)), static_cast<int>(word.size()));
}

inline Address normalize(const Address& a) { return normalize(a.variant, a.word, a.tip); }

inline std::string format_address(const Address& a) {
    std::string s(1, variant_char(a.variant));
    s += ':';
    for (const CellIndex& c : a.word) s += cell_str(c);
    s += '@';
    s += boundary_str(a.tip);
    return s;
}

namespace detail {

inline void expect(bool ok, const std::string& text, std::size_t pos, const std::string& what) {
    if (!ok)
        throw parse_error("address '" + text + "': expected " + what + " at position " +
                          std::to_string(pos));
}

}  // namespace detail

// Text format: `M:(0,1)(2,0)@(1/3,0)` (empty word allowed: `M:@(0,0)`).
// The result is normalized.
inline Address parse_address(const std::string& text) {
    std::size_t pos = 0;
    auto eat = [&](char c, const char* what) {
        detail::expect(pos < text.size() && text[pos] == c, text, pos, what);
        ++pos;
    };
    detail::expect(pos < text.size() && (text[pos] == 'M' || text[pos] == 'N'), text, pos,
                   "variant M or N");
    Variant v = text[pos] == 'M' ? Variant::M : Variant::N;
    ++pos;
    eat(':', "':'");
    std::vector<CellIndex> word;
    while (pos < text.size() && text[pos] == '(') {
        ++pos;
        detail::expect(pos < text.size() && text[pos] >= '0' && text[pos] <= '2', text, pos,
                       "digit 0-2");
        int i = text[pos++] - '0';
        eat(',', "','");
        detail::expect(pos < text.size() && text[pos] >= '0' && text[pos] <= '2', text, pos,
                       "digit 0-2");
        int j = text[pos++] - '0';
        eat(')', "')'");
        word.push_back({i, j});
    }
    eat('@', "'@'");
    eat('(', "'('");
    std::size_t comma = text.find(',', pos);
    detail::expect(comma != std::string::npos, text, pos, "','");
    std::size_t close = text.find(')', comma);
    detail::expect(close != std::string::npos && close + 1 == text.size(), text, comma,
                   "trailing ')'");
    Rat x, y;
    try {
        x = parse_rat(text.substr(pos, comma - pos));
        y = parse_rat(text.substr(comma + 1, close - comma - 1));
    } catch (const parse_error& e) {
        throw parse_error("address '" + text + "': " + e.what());
    }
    try {
        return normalize(v, word, boundary_point(std::move(x), std::move(y)));
    } catch (const input_error& e) {
        throw parse_error("address '" + text + "': " + e.what());
    }
}

}  // namespace carpet
