#pragma once

#include "carpet/boundary.hpp"
#include "carpet/cell.hpp"
#include "carpet/gluing.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/report.hpp"
#include "carpet/rng.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carpet {

// A grid vertex of the level-k skeleton, addressed as an index word plus a
// cell corner.  Canonical form uses the least word, like Address.
struct CornerAddress {
    Variant variant = Variant::M;
    std::vector<CellIndex> word;
    int cx = 0;  // corner in {0,1}^2
    int cy = 0;

    int level() const { return static_cast<int>(word.size()); }
    bool operator==(const CornerAddress&) const = default;
};

inline Address to_address(const CornerAddress& c) {
    if ((c.cx != 0 && c.cx != 1) || (c.cy != 0 && c.cy != 1))
        throw input_error("corner address: corner must be in {0,1}^2");
    return normalize(c.variant, c.word, boundary_point(Rat(c.cx), Rat(c.cy)));
}

// Integer grid coordinates (a, b) of the vertex at its own level: the point
// is (a, b) / 3^level.
inline std::pair<long long, long long> grid_coords(const CornerAddress& c) {
    long long a = 0, b = 0;
    for (const CellIndex& d : c.word) {
        a = a * 3 + d.i;
        b = b * 3 + d.j;
    }
    return {a + c.cx, b + c.cy};
}

// 1-skeleton of the level-k subdivision: vertices are corners of kept cells,
// edges their unit sides.  Variant M drops every cell whose word contains
// (1,1); variant N keeps the full grid.
struct LatticeGraph {
    int level = 0;
    Variant variant = Variant::M;
    long long side = 1;                         // 3^level cells per axis
    std::vector<std::uint8_t> kept;             // cell cy*side+cx
    std::vector<std::int32_t> vid;              // grid b*(side+1)+a -> vertex or -1
    std::vector<std::pair<int, int>> vpos;      // vertex -> (a, b)
    std::vector<std::array<std::int32_t, 4>> adj;

    std::size_t vertex_count() const { return vpos.size(); }
    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& n : adj)
            for (std::int32_t v : n)
                if (v >= 0) ++twice;
        return twice / 2;
    }
    bool cell_kept(long long cx, long long cy) const {
        if (cx < 0 || cy < 0 || cx >= side || cy >= side) return false;
        return kept[static_cast<std::size_t>(cy * side + cx)] != 0;
    }
    std::int32_t vertex_at(long long a, long long b) const {
        if (a < 0 || b < 0 || a > side || b > side) return -1;
        return vid[static_cast<std::size_t>(b * (side + 1) + a)];
    }
};

inline LatticeGraph build_lattice(int k, Variant v, int k_max = 6) {
    if (k < 0) throw input_error("build_lattice: negative level");
    if (k > k_max)
        throw limit_error("build_lattice: level " + std::to_string(k) + " exceeds k_max " +
                          std::to_string(k_max));
    LatticeGraph g;
    g.level = k;
    g.variant = v;
    long long side = 1;
    for (int i = 0; i < k; ++i) side *= 3;
    g.side = side;

    g.kept.assign(static_cast<std::size_t>(side * side), 1);
    if (v == Variant::M) {
        for (long long cy = 0; cy < side; ++cy) {
            for (long long cx = 0; cx < side; ++cx) {
                long long x = cx, y = cy;
                for (int t = 0; t < k; ++t) {
                    if (x % 3 == 1 && y % 3 == 1) {
                        g.kept[static_cast<std::size_t>(cy * side + cx)] = 0;
                        break;
                    }
                    x /= 3;
                    y /= 3;
                }
            }
        }
    }

    long long gs = side + 1;
    g.vid.assign(static_cast<std::size_t>(gs * gs), -1);
    for (long long b = 0; b <= side; ++b) {
        for (long long a = 0; a <= side; ++a) {
            bool corner = g.cell_kept(a - 1, b - 1) || g.cell_kept(a, b - 1) ||
                          g.cell_kept(a - 1, b) || g.cell_kept(a, b);
            if (corner) {
                g.vid[static_cast<std::size_t>(b * gs + a)] =
                    static_cast<std::int32_t>(g.vpos.size());
                g.vpos.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }

    g.adj.assign(g.vpos.size(), {-1, -1, -1, -1});
    auto horizontal_edge = [&](long long a, long long b) {
        return g.cell_kept(a, b) || g.cell_kept(a, b - 1);
    };
    auto vertical_edge = [&](long long a, long long b) {
        return g.cell_kept(a, b) || g.cell_kept(a - 1, b);
    };
    for (std::size_t u = 0; u < g.vpos.size(); ++u) {
        auto [a, b] = g.vpos[u];
        if (horizontal_edge(a, b)) g.adj[u][0] = g.vertex_at(a + 1, b);
        if (a > 0 && horizontal_edge(a - 1, b)) g.adj[u][1] = g.vertex_at(a - 1, b);
        if (vertical_edge(a, b)) g.adj[u][2] = g.vertex_at(a, b + 1);
        if (b > 0 && vertical_edge(a, b - 1)) g.adj[u][3] = g.vertex_at(a, b - 1);
    }
    return g;
}

// Hop counts from src to every vertex (-1 if unreachable).
inline std::vector<std::int32_t> bfs_hops(const LatticeGraph& g, std::int32_t src) {
    std::vector<std::int32_t> dist(g.vertex_count(), -1);
    std::vector<std::int32_t> queue;
    queue.reserve(g.vertex_count());
    dist[static_cast<std::size_t>(src)] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int32_t u = queue[head];
        std::int32_t du = dist[static_cast<std::size_t>(u)];
        for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
            if (w >= 0 && dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Builds lattice graphs on demand and shares them; not thread-safe during
// construction.
class LatticeStore {
  public:
    explicit LatticeStore(int k_max = 6) : k_max_(k_max) {}

    int k_max() const { return k_max_; }

    const LatticeGraph& get(int k, Variant v) const {
        auto key = std::make_pair(k, static_cast<int>(v));
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, std::make_shared<LatticeGraph>(build_lattice(k, v, k_max_)))
                     .first;
        return *it->second;
    }

  private:
    int k_max_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<LatticeGraph>> cache_;
};

inline std::int32_t corner_vertex(const LatticeGraph& g, const CornerAddress& c) {
    if (c.level() != g.level || c.variant != g.variant)
        throw input_error("corner address does not match graph level/variant");
    for (const CellIndex& d : c.word)
        if (!cell_valid(c.variant, d))
            throw input_error("corner address: invalid cell " + cell_str(d));
    auto [a, b] = grid_coords(c);
    std::int32_t v = g.vertex_at(a, b);
    if (v < 0) throw input_error("corner address does not name a lattice vertex");
    return v;
}

// Canonical corner address of a lattice vertex.
inline CornerAddress vertex_corner_address(const LatticeGraph& g, std::int32_t v) {
    auto [a, b] = g.vpos.at(static_cast<std::size_t>(v));
    Int den = pow3(g.level);
    Address addr = point_address(g.variant, {make_rat(a, den), make_rat(b, den)}, g.level);
    return {g.variant, addr.word, addr.tip.x == 1 ? 1 : 0, addr.tip.y == 1 ? 1 : 0};
}

// Exact quotient-metric distance between two corner points: BFS hop count
// scaled by 3^-k.
inline Rat geodesic_distance(const LatticeGraph& g, const CornerAddress& a,
                             const CornerAddress& b) {
    std::int32_t va = corner_vertex(g, a);
    std::int32_t vb = corner_vertex(g, b);
    auto hops = bfs_hops(g, va)[static_cast<std::size_t>(vb)];
    if (hops < 0) throw input_error("vertices not connected");  // cannot happen on these graphs
    return make_rat(hops, pow3(g.level));
}

// Closed-form N-lattice distance (h+v)/3^p from the index digits; rejects
// variant M, where holes can force longer paths.
inline Rat nqm_formula(const CornerAddress& a, const CornerAddress& b) {
    if (a.variant != Variant::N || b.variant != Variant::N)
        throw input_error("nqm_formula: defined for variant N only");
    if (a.level() != b.level()) throw input_error("nqm_formula: mismatched levels");
    auto [ax, ay] = grid_coords(a);
    auto [bx, by] = grid_coords(b);
    long long h = ax > bx ? ax - bx : bx - ax;
    long long v = ay > by ? ay - by : by - ay;
    return make_rat(h + v, pow3(a.level()));
}

// Image of an address j levels up the chain.  The tip point is unchanged;
// the word grows by the side embedding of the tip, one digit per level.
inline Address refine(const Address& a, int j) {
    if (j < 0) throw input_error("refine: negative step");
    Address out = a;
    for (int t = 0; t < j; ++t) {
        auto [m, tip] = side_embedding(out.variant, out.tip);
        out.word.push_back(m);
        out.tip = tip;
    }
    return out;
}

inline CornerAddress refine_corner(const CornerAddress& a, int j) {
    if (j < 0) throw input_error("refine: negative step");
    CornerAddress out = a;
    for (int t = 0; t < j; ++t) out.word.push_back({2 * out.cx, 2 * out.cy});
    return out;
}

// Extra levels needed before the tip becomes a cell corner.  Non-ternary
// tips never reach corner level and are rejected, not approximated.
inline int corner_defect(const Address& a) {
    if (!is_ternary_rational(a.tip.x) || !is_ternary_rational(a.tip.y))
        throw input_error("distance queries need ternary-rational tips, got " +
                          boundary_str(a.tip));
    int ex = ternary_exponent(a.tip.x);
    int ey = ternary_exponent(a.tip.y);
    return ex > ey ? ex : ey;
}

inline CornerAddress to_corner(const Address& a) {
    Address r = refine(a, corner_defect(a));
    return {r.variant, r.word, r.tip.x == 1 ? 1 : 0, r.tip.y == 1 ? 1 : 0};
}

// Asserts that the corner distance is unchanged by refinement, level by
// level; reports the first level of disagreement.
inline Report distance_stable(const LatticeStore& store, const CornerAddress& a,
                              const CornerAddress& b, int extra_levels) {
    if (a.variant != b.variant || a.level() != b.level())
        throw input_error("distance_stable: mismatched addresses");
    Report rep;
    Rat base = geodesic_distance(store.get(a.level(), a.variant), a, b);
    for (int j = 1; j <= extra_levels; ++j) {
        CornerAddress ra = refine_corner(a, j);
        CornerAddress rb = refine_corner(b, j);
        Rat d = geodesic_distance(store.get(ra.level(), ra.variant), ra, rb);
        if (d != base) {
            rep.add("distance_stable", false,
                    "level " + std::to_string(a.level() + j) + ": " + rat_str(d) + " vs base " +
                        rat_str(base));
            return rep;
        }
    }
    rep.add("distance_stable", true,
            rat_str(base) + " stable through +" + std::to_string(extra_levels));
    return rep;
}

// Quotient-metric distance between arbitrary ternary-tip addresses: refine
// both to the least common corner level and run BFS there.
inline Rat general_distance(const LatticeStore& store, const Address& a, const Address& b) {
    if (a.variant != b.variant) throw input_error("general_distance: mismatched variants");
    int la = a.level() + corner_defect(a);
    int lb = b.level() + corner_defect(b);
    int level = la > lb ? la : lb;
    if (level > store.k_max())
        throw limit_error("general_distance: required level " + std::to_string(level) +
                          " exceeds k_max " + std::to_string(store.k_max()));
    CornerAddress ca = refine_corner(to_corner(a), level - la);
    CornerAddress cb = refine_corner(to_corner(b), level - lb);
    return geodesic_distance(store.get(level, a.variant), ca, cb);
}

struct BilipschitzSweep {
    bool pass = true;
    std::size_t pairs = 0;
    long long ratio_hops = 0;  // max of (hops / l1) over the sweep, as a pair
    long long ratio_l1 = 1;
    std::pair<int, int> witness_a{0, 0};  // grid coordinates at the sweep level
    std::pair<int, int> witness_b{0, 0};
    std::string first_violation;

    Rat max_ratio() const { return make_rat(ratio_hops, ratio_l1); }
};

namespace detail {

inline void bilipschitz_consider(const LatticeGraph& g, BilipschitzSweep& sweep, std::int32_t u,
                                 std::int32_t w, long long hops) {
    auto [ua, ub] = g.vpos[static_cast<std::size_t>(u)];
    auto [wa, wb] = g.vpos[static_cast<std::size_t>(w)];
    long long l1 = std::llabs(ua - wa) + std::llabs(ub - wb);
    if (l1 == 0) return;
    ++sweep.pairs;
    if (hops < l1 || hops > 2 * l1) {
        sweep.pass = false;
        if (sweep.first_violation.empty())
            sweep.first_violation = "(" + std::to_string(ua) + "," + std::to_string(ub) + ")-(" +
                                    std::to_string(wa) + "," + std::to_string(wb) + ") hops " +
                                    std::to_string(hops) + " l1 " + std::to_string(l1);
    }
    if (hops * sweep.ratio_l1 > sweep.ratio_hops * l1) {
        sweep.ratio_hops = hops;
        sweep.ratio_l1 = l1;
        sweep.witness_a = {ua, ub};
        sweep.witness_b = {wa, wb};
    }
}

}  // namespace detail

// Certifies taxicab <= lattice distance <= 2 * taxicab over corner pairs of
// the level-k M lattice; exhaustive when sample_pairs is empty, otherwise a
// seeded sample grouped by BFS source.
inline BilipschitzSweep verify_bilipschitz(const LatticeStore& store, int k,
                                           std::optional<std::size_t> sample_pairs = std::nullopt,
                                           std::uint64_t seed = 1) {
    const LatticeGraph& g = store.get(k, Variant::M);
    BilipschitzSweep sweep;
    std::size_t n = g.vertex_count();
    if (!sample_pairs) {
        for (std::size_t u = 0; u < n; ++u) {
            auto hops = bfs_hops(g, static_cast<std::int32_t>(u));
            for (std::size_t w = u + 1; w < n; ++w)
                detail::bilipschitz_consider(g, sweep, static_cast<std::int32_t>(u),
                                             static_cast<std::int32_t>(w), hops[w]);
        }
        return sweep;
    }
    Rng rng(seed);
    std::size_t targets_per_source = 100;
    while (sweep.pairs < *sample_pairs) {
        auto u = static_cast<std::int32_t>(rng.below(n));
        auto hops = bfs_hops(g, u);
        for (std::size_t t = 0; t < targets_per_source && sweep.pairs < *sample_pairs; ++t) {
            auto w = static_cast<std::int32_t>(rng.below(n));
            while (w == u) w = static_cast<std::int32_t>(rng.below(n));
            detail::bilipschitz_consider(g, sweep, u, w, hops[static_cast<std::size_t>(w)]);
        }
    }
    return sweep;
}

// Sharper bound for axis-aligned corner pairs: hops <= 2 * |difference|.
inline Report lower_bound_check(const LatticeStore& store, int k) {
    const LatticeGraph& g = store.get(k, Variant::M);
    Report rep;
    std::size_t checked = 0, bad = 0;
    std::string first_bad;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        auto hops = bfs_hops(g, static_cast<std::int32_t>(u));
        auto [ua, ub] = g.vpos[u];
        for (std::size_t w = u + 1; w < g.vertex_count(); ++w) {
            auto [wa, wb] = g.vpos[w];
            if (ua != wa && ub != wb) continue;
            long long l1 = std::llabs(ua - wa) + std::llabs(ub - wb);
            ++checked;
            if (hops[w] > 2 * l1) {
                ++bad;
                if (first_bad.empty())
                    first_bad = "(" + std::to_string(ua) + "," + std::to_string(ub) + ")-(" +
                                std::to_string(wa) + "," + std::to_string(wb) + ") hops " +
                                std::to_string(hops[w]);
            }
        }
    }
    rep.add("segment bound k=" + std::to_string(k), bad == 0,
            bad == 0 ? std::to_string(checked) + " axis-aligned pairs" : first_bad);
    return rep;
}

}  // namespace carpet
