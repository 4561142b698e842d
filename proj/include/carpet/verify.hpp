#pragma once

#include "carpet/boundary.hpp"
#include "carpet/corecursive.hpp"
#include "carpet/gluing.hpp"
#include "carpet/hutchinson.hpp"
#include "carpet/lattice.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/report.hpp"
#include "carpet/rng.hpp"
#include "carpet/squarespace.hpp"
#include "carpet/svg.hpp"
#include "carpet/ternary.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace carpet {

struct VerifyConfig {
    std::uint64_t seed = 1;
    int k_max = 6;
    int sweep_k = 5;  // deepest level the sampled sweeps visit
};

// ---------------------------------------------------------------- taxicab

inline Report taxicab_checks(const VerifyConfig& cfg) {
    Report rep;
    Rng rng(cfg.seed ^ 0x7a);
    auto rand_point = [&] { return Point2{rng.rat_in_unit(729), rng.rat_in_unit(729)}; };

    std::vector<std::pair<Point2, Point2>> pairs;
    for (int i = 0; i < 1000; ++i) pairs.emplace_back(rand_point(), rand_point());
    std::size_t bad = 0;
    for (const auto& r : verify_taxi_euclid_bilipschitz(pairs))
        if (!r.pass) ++bad;
    rep.add("taxi/euclid constant 2 in squared form, 1000 pairs", bad == 0,
            std::to_string(bad) + " violations");

    bool axioms = true;
    for (int i = 0; i < 300 && axioms; ++i) {
        Point2 a = rand_point(), b = rand_point(), c = rand_point();
        axioms = taxicab(a, b) == taxicab(b, a) && taxicab(a, a) == 0 &&
                 taxicab(a, c) <= taxicab(a, b) + taxicab(b, c) &&
                 (taxicab(a, b) == 0) == (a == b);
    }
    rep.add("taxicab metric axioms, 300 triples", axioms);

    rep.add("d((0,0),(1,1)) == 2",
            taxicab({Rat(0), Rat(0)}, {Rat(1), Rat(1)}) == 2);
    rep.add("d((1/3,0),(2/3,4/9)) == 7/9",
            taxicab({make_rat(1, 3), Rat(0)}, {make_rat(2, 3), make_rat(4, 9)}) ==
                make_rat(7, 9));
    return rep;
}

// ---------------------------------------------------------------- ternary

inline Report ternary_checks(const VerifyConfig& cfg) {
    Report rep;
    Rng rng(cfg.seed ^ 0x3e);
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t den = 1 + rng.below(4374);  // up to 3^6 * 6
        Rat x = make_rat(Int(rng.below(den + 1)), Int(den));
        if (eval_ternary(to_ternary(x, TernaryVariant::low)) != x ||
            eval_ternary(to_ternary(x, TernaryVariant::high)) != x)
            ++bad;
    }
    rep.add("eval o to_ternary == id, 1000 rationals, both variants", bad == 0,
            std::to_string(bad) + " failures");

    TernaryStream low = to_ternary(make_rat(1, 3), TernaryVariant::low);
    TernaryStream high = to_ternary(make_rat(1, 3), TernaryVariant::high);
    bool duals = low.preperiod == std::vector<int>{1} && low.period == std::vector<int>{0} &&
                 high.preperiod == std::vector<int>{0} && high.period == std::vector<int>{2} &&
                 eval_ternary(low) == make_rat(1, 3) && eval_ternary(high) == make_rat(1, 3);
    rep.add("dual expansions of 1/3 both evaluate to 1/3", duals);
    rep.add("eval(pre=[0,2], period=[1]) == 5/18",
            eval_ternary({{0, 2}, {1}}) == make_rat(5, 18));
    return rep;
}

// ------------------------------------------------------------- squarespace

// Distance oracle for the level-k glued space: boundary points are embedded
// by k side embeddings, then measured by general_distance.  BFS results are
// cached per (level, source vertex).
inline MetricOracle lattice_oracle(const LatticeStore& store, Variant v, int k) {
    struct Cache {
        std::map<std::pair<int, std::int32_t>, std::shared_ptr<std::vector<std::int32_t>>> bfs;
    };
    auto cache = std::make_shared<Cache>();
    auto dist = [&store, v, k, cache](const BoundaryPoint& p, const BoundaryPoint& q) {
        Address ap = refine(normalize(v, {}, p), k);
        Address aq = refine(normalize(v, {}, q), k);
        int la = ap.level() + corner_defect(ap);
        int lb = aq.level() + corner_defect(aq);
        int level = la > lb ? la : lb;
        CornerAddress ca = refine_corner(to_corner(ap), level - la);
        CornerAddress cb = refine_corner(to_corner(aq), level - lb);
        const LatticeGraph& g = store.get(level, v);
        std::int32_t va = corner_vertex(g, ca);
        std::int32_t vb = corner_vertex(g, cb);
        if (vb < va) std::swap(va, vb);
        auto key = std::make_pair(level, va);
        auto it = cache->bfs.find(key);
        if (it == cache->bfs.end())
            it = cache->bfs
                     .emplace(key, std::make_shared<std::vector<std::int32_t>>(bfs_hops(g, va)))
                     .first;
        return make_rat((*it->second)[static_cast<std::size_t>(vb)], pow3(level));
    };
    return {"glued level " + std::to_string(k) + std::string(1, variant_char(v)), dist};
}

inline Report squarespace_checks(const LatticeStore& store, int depth = 3, int max_level = 3) {
    Report rep;
    for (const MetricOracle& m : {m0_path_oracle(), u0_taxicab_oracle()}) {
        for (const Check& c : validate_sq1(m, depth).checks) rep.checks.push_back(c);
        for (const Check& c : validate_sq2(m, depth).checks) rep.checks.push_back(c);
    }
    for (Variant v : {Variant::M, Variant::N}) {
        for (int k = 1; k <= max_level; ++k) {
            MetricOracle m = lattice_oracle(store, v, k);
            for (const Check& c : validate_sq1(m, depth).checks) rep.checks.push_back(c);
            for (const Check& c : validate_sq2(m, depth).checks) rep.checks.push_back(c);
        }
    }
    return rep;
}

// ------------------------------------------------------------------- nqm

inline Check nqm_equiv_exhaustive(const LatticeStore& store, int k) {
    const LatticeGraph& g = store.get(k, Variant::N);
    std::size_t n = g.vertex_count(), pairs = 0, bad = 0;
    for (std::size_t u = 0; u < n; ++u) {
        auto hops = bfs_hops(g, static_cast<std::int32_t>(u));
        auto [ua, ub] = g.vpos[u];
        for (std::size_t w = u + 1; w < n; ++w) {
            auto [wa, wb] = g.vpos[w];
            long long l1 = std::llabs(ua - wa) + std::llabs(ub - wb);
            ++pairs;
            if (hops[w] != l1) ++bad;
        }
    }
    return {"nqm == bfs, N k=" + std::to_string(k) + " exhaustive", bad == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches"};
}

inline Check nqm_equiv_sampled(const LatticeStore& store, int k, std::size_t pairs,
                               std::uint64_t seed) {
    const LatticeGraph& g = store.get(k, Variant::N);
    Rng rng(seed ^ 0x9d);
    std::size_t n = g.vertex_count(), done = 0, bad = 0;
    while (done < pairs) {
        auto u = static_cast<std::int32_t>(rng.below(n));
        auto hops = bfs_hops(g, u);
        auto [ua, ub] = g.vpos[static_cast<std::size_t>(u)];
        for (std::size_t t = 0; t < 100 && done < pairs; ++t, ++done) {
            auto w = rng.below(n);
            auto [wa, wb] = g.vpos[w];
            long long l1 = std::llabs(ua - wa) + std::llabs(ub - wb);
            if (hops[w] != l1) ++bad;
        }
    }
    return {"nqm == bfs, N k=" + std::to_string(k) + " sampled " + std::to_string(pairs), bad == 0,
            std::to_string(bad) + " mismatches"};
}

inline Check nqm_worked_pair(const LatticeStore& store) {
    CornerAddress a{Variant::N, {{0, 0}, {2, 2}}, 0, 0};
    CornerAddress b{Variant::N, {{2, 2}, {0, 0}}, 1, 0};
    Rat formula = nqm_formula(a, b);
    Rat bfs = geodesic_distance(store.get(2, Variant::N), a, b);
    return {"h=5 v=4 pair: formula and bfs both 1", formula == 1 && bfs == 1,
            "formula " + rat_str(formula) + ", bfs " + rat_str(bfs)};
}

inline Report nqm_checks(const LatticeStore& store, const VerifyConfig& cfg) {
    Report rep;
    for (int k = 0; k <= 3; ++k) rep.checks.push_back(nqm_equiv_exhaustive(store, k));
    rep.checks.push_back(nqm_equiv_sampled(store, 4, 2000, cfg.seed));
    rep.checks.push_back(nqm_worked_pair(store));
    return rep;
}

// ------------------------------------------------------------ bilipschitz

inline Check bilipschitz_band_check(const BilipschitzSweep& s, int k,
                                    std::optional<std::size_t> sample) {
    std::string label = "taxicab <= d <= 2*taxicab, M k=" + std::to_string(k) +
                        (sample ? " sampled " + std::to_string(*sample) : " exhaustive");
    std::string detail = std::to_string(s.pairs) + " pairs, max ratio " + rat_str(s.max_ratio()) +
                         " at (" + std::to_string(s.witness_a.first) + "," +
                         std::to_string(s.witness_a.second) + ")-(" +
                         std::to_string(s.witness_b.first) + "," +
                         std::to_string(s.witness_b.second) + ")";
    if (!s.pass) detail += "; first violation " + s.first_violation;
    return {label, s.pass, detail};
}

inline Check bilipschitz_band(const LatticeStore& store, int k,
                              std::optional<std::size_t> sample, std::uint64_t seed) {
    return bilipschitz_band_check(verify_bilipschitz(store, k, sample, seed), k, sample);
}

inline Check hole_pair_check(const LatticeStore& store) {
    Address a = point_address(Variant::M, {make_rat(1, 3), make_rat(4, 9)}, 2);
    Address b = point_address(Variant::M, {make_rat(2, 3), make_rat(4, 9)}, 2);
    Rat d = geodesic_distance(store.get(2, Variant::M), to_corner(a), to_corner(b));
    Rat t = taxicab(eval(a), eval(b));
    bool ok = d == make_rat(5, 9) && t == make_rat(1, 3);
    return {"hole pair (1/3,4/9)-(2/3,4/9): ratio exactly 5/3", ok,
            "d " + rat_str(d) + ", taxicab " + rat_str(t)};
}

inline Report bilipschitz_checks(const LatticeStore& store, const VerifyConfig& cfg) {
    Report rep;
    int exhaustive_k = std::min(3, cfg.sweep_k);
    for (int k = 0; k <= exhaustive_k; ++k) {
        BilipschitzSweep s = verify_bilipschitz(store, k);
        Check c = bilipschitz_band_check(s, k, std::nullopt);
        if (k >= 2 && s.max_ratio() < make_rat(5, 3)) {
            c.pass = false;
            c.detail += "; expected max ratio >= 5/3";
        }
        rep.checks.push_back(c);
    }
    for (int k = 4; k <= cfg.sweep_k; ++k)
        rep.checks.push_back(bilipschitz_band(store, k, 10000, cfg.seed));
    rep.checks.push_back(hole_pair_check(store));
    for (int k = 1; k <= exhaustive_k; ++k)
        for (const Check& c : lower_bound_check(store, k).checks) rep.checks.push_back(c);
    return rep;
}

// -------------------------------------------------------------- stability

inline Check stability_exhaustive(const LatticeStore& store, Variant v, int k, int extra) {
    const LatticeGraph& g0 = store.get(k, v);
    std::size_t n = g0.vertex_count(), bad = 0, pairs = 0;
    std::string first_bad;
    for (std::size_t u = 0; u < n; ++u) {
        auto [ua, ub] = g0.vpos[u];
        auto base = bfs_hops(g0, static_cast<std::int32_t>(u));
        for (int j = 1; j <= extra; ++j) {
            const LatticeGraph& gj = store.get(k + j, v);
            long long f = 1;
            for (int t = 0; t < j; ++t) f *= 3;
            auto hops = bfs_hops(gj, gj.vertex_at(ua * f, ub * f));
            for (std::size_t w = u + 1; w < n; ++w) {
                auto [wa, wb] = g0.vpos[w];
                if (j == 1) ++pairs;
                std::int32_t hw =
                    hops[static_cast<std::size_t>(gj.vertex_at(wa * f, wb * f))];
                if (hw != base[w] * f) {
                    ++bad;
                    if (first_bad.empty())
                        first_bad = "level " + std::to_string(k + j) + " (" + std::to_string(ua) +
                                    "," + std::to_string(ub) + ")-(" + std::to_string(wa) + "," +
                                    std::to_string(wb) + ")";
                }
            }
        }
    }
    return {"refinement stability, " + std::string(1, variant_char(v)) + " k=" +
                std::to_string(k) + " +" + std::to_string(extra),
            bad == 0,
            bad == 0 ? std::to_string(pairs) + " pairs" : first_bad};
}

inline Report stability_checks(const LatticeStore& store, const VerifyConfig&) {
    Report rep;
    for (Variant v : {Variant::M, Variant::N})
        for (int k = 0; k <= 2; ++k)
            rep.checks.push_back(stability_exhaustive(store, v, k, 2));
    return rep;
}

// ---------------------------------------------------------------- scaling

inline Check scaling_exhaustive(const LatticeStore& store, Variant v, int k) {
    const LatticeGraph& g0 = store.get(k, v);
    const LatticeGraph& g1 = store.get(k + 1, v);
    std::size_t n = g0.vertex_count(), bad = 0, pairs = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (!cell_valid(v, {i, j})) continue;
            long long ox = static_cast<long long>(i) * g0.side;
            long long oy = static_cast<long long>(j) * g0.side;
            for (std::size_t u = 0; u < n; ++u) {
                auto [ua, ub] = g0.vpos[u];
                auto base = bfs_hops(g0, static_cast<std::int32_t>(u));
                auto hops = bfs_hops(g1, g1.vertex_at(ua + ox, ub + oy));
                for (std::size_t w = u + 1; w < n; ++w) {
                    auto [wa, wb] = g0.vpos[w];
                    ++pairs;
                    if (hops[static_cast<std::size_t>(g1.vertex_at(wa + ox, wb + oy))] != base[w])
                        ++bad;
                }
            }
        }
    }
    return {"per-copy scaling 1/3, " + std::string(1, variant_char(v)) + " k=" +
                std::to_string(k),
            bad == 0, std::to_string(pairs) + " prefixed pairs, " + std::to_string(bad) + " bad"};
}

inline Report scaling_checks(const LatticeStore& store, const VerifyConfig&) {
    Report rep;
    for (Variant v : {Variant::M, Variant::N})
        for (int k = 0; k <= 2; ++k) rep.checks.push_back(scaling_exhaustive(store, v, k));
    return rep;
}

// ---------------------------------------------------------------- solvers

inline Coalgebra two_state_example() {
    return square_coalgebra(Variant::M, {{"z1", {1, 2}, "z2"}, {"z2", {0, 2}, "z1"}});
}

inline Report solver_checks(const VerifyConfig& cfg) {
    Report rep;
    {
        Coalgebra c = two_state_example();
        auto sol = solve_square(c);
        bool ok = sol[0] == Point2{make_rat(3, 8), Rat(1)} &&
                  sol[1] == Point2{make_rat(1, 8), Rat(1)};
        rep.add("two-state system solves to (3/8,1),(1/8,1)", ok,
                point_str(sol[0]) + " " + point_str(sol[1]));
        rep.add("two-state values are carpet members",
                carpet_membership(sol[0]) == Membership::member &&
                    carpet_membership(sol[1]) == Membership::member);
        for (const Check& chk : contraction_uniqueness(c, 5, 20, cfg.seed).checks)
            rep.checks.push_back(chk);
    }
    {
        Coalgebra c = square_coalgebra(Variant::M, {{"o", {0, 0}, "o"}});
        rep.add("self-loop (0,0) solves to (0,0)",
                solve_square(c)[0] == Point2{Rat(0), Rat(0)});
        Coalgebra d = square_coalgebra(Variant::M, {{"t", {2, 2}, "t"}});
        rep.add("self-loop (2,2) solves to (1,1)",
                solve_square(d)[0] == Point2{Rat(1), Rat(1)});
    }
    {
        Coalgebra c = interval_coalgebra(make_rat(1, 3), {{"x", make_rat(1, 2), "x"}});
        rep.add("interval self-loop xi=1/2 solves to 3/4", solve_interval(c)[0] == make_rat(3, 4));
        Coalgebra d = interval_coalgebra(
            make_rat(1, 3), {{"a", make_rat(1, 3), "b"}, {"b", make_rat(2, 3), "a"}});
        auto sol = solve_interval(d);
        rep.add("interval two-cycle solves to 5/8, 7/8",
                sol[0] == make_rat(5, 8) && sol[1] == make_rat(7, 8));
        Coalgebra z = interval_coalgebra(make_rat(1, 3),
                                         {{"a", Rat(0), "b"}, {"b", Rat(0), "a"}});
        auto zsol = solve_interval(z);
        rep.add("all-zero system solves to zero", zsol[0] == 0 && zsol[1] == 0);
    }
    {
        // parametric delta: K = [0,1/3], delta = 2/3
        Coalgebra c = interval_coalgebra(
            make_rat(2, 3), {{"a", make_rat(1, 3), "b"}, {"b", make_rat(1, 4), "a"}});
        for (Check chk : contraction_uniqueness(c, 5, 20, cfg.seed).checks) {
            chk.label += " (delta=2/3)";
            rep.checks.push_back(chk);
        }
    }
    {
        // exact solution is a fixed point of the iteration, step by step
        Coalgebra c = two_state_example();
        auto sol = solve_square(c);
        bool fixed = true;
        auto f = sol;
        for (int i = 0; i < 8 && fixed; ++i) {
            f = contraction_step_square(c, f);
            fixed = f == sol;
        }
        rep.add("exact solution is a step-by-step fixed point", fixed);
    }
    {
        // bisimilar two-state loop vs its one-state merge
        Coalgebra a =
            square_coalgebra(Variant::M, {{"p", {2, 0}, "q"}, {"q", {2, 0}, "p"}});
        Coalgebra b = square_coalgebra(Variant::M, {{"r", {2, 0}, "r"}});
        auto sa = solve_square(a);
        auto sb = solve_square(b);
        rep.add("bisimilar states share the merged solution",
                sa[0] == sb[0] && sa[1] == sb[0]);
    }
    {
        // cycle systems land inside every nested cell of their label chain
        std::vector<std::vector<CellIndex>> cycles = {
            {{1, 2}}, {{0, 1}, {2, 0}}, {{2, 2}, {0, 0}, {1, 0}}};
        bool ok = true;
        for (const auto& cyc : cycles) {
            Coalgebra c;
            c.variant = Variant::M;
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                c.names.push_back("s" + std::to_string(i));
                c.labels.push_back(cyc[i]);
                c.succ.push_back(static_cast<int>((i + 1) % cyc.size()));
            }
            Point2 z = solve_square(c)[0];
            for (int p = 1; p <= 5 && ok; ++p) {
                std::vector<CellIndex> prefix;
                for (int t = 0; t < p; ++t) prefix.push_back(cyc[static_cast<std::size_t>(t) % cyc.size()]);
                CellSet cell = word_cell(prefix);
                auto [cx, cy] = decode_cell(cell, cell.cells[0]);
                Int den = pow3(p);
                ok = z.x >= make_rat(cx, den) && z.x <= make_rat(cx + 1, den) &&
                     z.y >= make_rat(cy, den) && z.y <= make_rat(cy + 1, den);
            }
        }
        rep.add("cycle solutions lie in all nested label cells, p <= 5", ok);
    }
    {
        Rng rng(cfg.seed ^ 0x51);
        bool ok = true;
        std::vector<CellIndex> mcells;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(i == 1 && j == 1)) mcells.push_back({i, j});
        for (int t = 0; t < 25 && ok; ++t) {
            Coalgebra c;
            c.variant = Variant::M;
            std::size_t n = 2 + rng.below(4);
            for (std::size_t i = 0; i < n; ++i) {
                c.names.push_back("s" + std::to_string(i));
                c.labels.push_back(mcells[rng.below(mcells.size())]);
                c.succ.push_back(static_cast<int>(rng.below(n)));
            }
            auto sol = solve_square(c);  // throws if identity or membership fails
            ok = sol.size() == n;
        }
        rep.add("25 random M systems: identity and membership certified", ok);
    }
    return rep;
}

// ----------------------------------------------------------------- cauchy

// Boundary orbit fixture around the non-short pair (2/9,0), (4/9,0).
inline Coalgebra boundary_orbit_coalgebra(const std::vector<BoundaryPoint>& seeds) {
    std::vector<BoundaryPoint> states;
    std::vector<CellIndex> labels;
    std::vector<int> succ;
    auto index_of = [&](const BoundaryPoint& p) -> int {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == p) return static_cast<int>(i);
        return -1;
    };
    std::vector<int> todo;
    for (const BoundaryPoint& s : seeds) {
        if (index_of(s) >= 0) continue;
        states.push_back(s);
        todo.push_back(static_cast<int>(states.size()) - 1);
    }
    labels.resize(states.size());
    succ.assign(states.size(), -1);
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        auto [m, next] = side_embedding(Variant::M, states[static_cast<std::size_t>(i)]);
        int j = index_of(next);
        if (j < 0) {
            states.push_back(next);
            labels.resize(states.size());
            succ.push_back(-1);
            j = static_cast<int>(states.size()) - 1;
            todo.push_back(j);
        }
        labels[static_cast<std::size_t>(i)] = m;
        succ[static_cast<std::size_t>(i)] = j;
    }
    Coalgebra c;
    c.variant = Variant::M;
    for (std::size_t i = 0; i < states.size(); ++i)
        c.names.push_back("b" + std::to_string(i));
    c.labels = labels;
    c.succ = succ;
    validate_coalgebra(c);
    return c;
}

inline Check non_short_witness(const LatticeStore& store) {
    BoundaryPoint x = boundary_point(make_rat(2, 9), Rat(0));
    BoundaryPoint y = boundary_point(make_rat(4, 9), Rat(0));
    Coalgebra c = boundary_orbit_coalgebra({x, y});
    CornerAddress h1x = approx_h(c, 0, 1);
    CornerAddress h1y = approx_h(c, 1, 1);
    Rat d = geodesic_distance(store.get(1, Variant::M), h1x, h1y);
    bool ok = h1x.word == std::vector<CellIndex>{{0, 0}} &&
              h1y.word == std::vector<CellIndex>{{1, 0}} && d == make_rat(1, 3) &&
              d > make_rat(2, 9);
    return {"non-short witness: d(h1(x),h1(y)) == 1/3 > 2/9", ok, "d " + rat_str(d)};
}

inline Report cauchy_checks(const LatticeStore& store, const VerifyConfig& cfg,
                            int systems = 100) {
    Report rep;
    rep.checks.push_back(non_short_witness(store));
    Rng rng(cfg.seed ^ 0xca);
    std::vector<CellIndex> mcells;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 1 && j == 1)) mcells.push_back({i, j});
    std::size_t bad = 0;
    for (int t = 0; t < systems; ++t) {
        Coalgebra c;
        c.variant = Variant::M;
        for (int i = 0; i < 3; ++i) {
            c.names.push_back("s" + std::to_string(i));
            c.labels.push_back(mcells[rng.below(mcells.size())]);
            c.succ.push_back(static_cast<int>(rng.below(3)));
        }
        for (int b = 0; b < 3; ++b)
            if (!cauchy_rate_check(c, b, std::min(5, cfg.sweep_k), store).pass()) ++bad;
    }
    rep.add("cauchy rate 2*3^-k for " + std::to_string(systems) + " random 3-state systems",
            bad == 0, std::to_string(bad) + " failures");
    return rep;
}

// ------------------------------------------------------------- hutchinson

inline Report hutchinson_checks(const LatticeStore& store, const VerifyConfig& cfg) {
    Report rep;
    for (int p = 0; p <= 4; ++p)
        for (const Check& c : fixed_point_check(store, p).checks) rep.checks.push_back(c);

    CellSet u0 = unit_square_cells();
    std::vector<CellSet> sigma(7);
    sigma[0] = u0;
    for (int p = 1; p <= 6; ++p) sigma[static_cast<std::size_t>(p)] = sigma_step(sigma[static_cast<std::size_t>(p - 1)]);

    HausdorffBounds d0 = hausdorff_taxi(u0, sigma[1], 3);
    rep.add("d_Ht(U0, sigma U0) bounds bracket 1/6",
            d0.lower <= make_rat(1, 6) && make_rat(1, 6) <= d0.upper,
            "[" + rat_str(d0.lower) + ", " + rat_str(d0.upper) + "]");

    bool rate_ok = true;
    std::string rate_detail;
    for (int p = 0; p <= 4; ++p) {
        int q = p + 3;
        HausdorffBounds b = hausdorff_taxi(sigma[static_cast<std::size_t>(p)],
                                           sigma[static_cast<std::size_t>(p + 1)], q);
        Rat cap = d0.upper / pow3(p);
        Rat slack = make_rat(2, pow3(q));
        if (!(b.lower <= cap && b.upper <= cap + slack)) rate_ok = false;
        rate_detail += "p=" + std::to_string(p) + ":[" + rat_str(b.lower) + "," +
                       rat_str(b.upper) + "] ";
    }
    rep.add("d_Ht(sigma^p, sigma^p+1) <= 3^-p * d0 within sampling slack", rate_ok, rate_detail);

    {
        HausdorffBounds same = hausdorff_taxi(sigma[2], sigma[2], 5);
        rep.add("d_Ht(A,A) bounds are (0, 2*3^-q)",
                same.lower == 0 && same.upper == make_rat(2, pow3(5)));
    }

    {
        bool ok = true;
        Rng rng(cfg.seed ^ 0x1f5);
        for (int t = 0; t < 20 && ok; ++t) {
            std::vector<CellIndex> word;
            int len = 1 + static_cast<int>(rng.below(5));
            for (int i = 0; i < len; ++i) {
                CellIndex m{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))};
                if (m.i == 1 && m.j == 1) m = {0, 0};
                word.push_back(m);
            }
            ok = cellset_diameter_taxi(word_cell(word)) == make_rat(2, pow3(len));
        }
        rep.add("diameter of address cells is exactly 2*3^-p", ok);
    }

    {
        // nesting of the prefix chain, all words of length <= 3
        bool ok = true;
        std::vector<CellIndex> mcells;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(i == 1 && j == 1)) mcells.push_back({i, j});
        for (CellIndex a : mcells) {
            for (CellIndex b : mcells) {
                for (CellIndex c : mcells) {
                    CellSet s1 = word_cell({a});
                    CellSet s2 = word_cell({a, b});
                    CellSet s3 = word_cell({a, b, c});
                    ok = ok && cellset_subset(s2, s1) && cellset_subset(s3, s2) &&
                         !cellset_subset(s1, s2) && !cellset_subset(s2, s3);
                }
            }
        }
        rep.add("prefix chains nest strictly, all words length <= 3", ok);
    }

    {
        // monotonicity and sampled contraction of sigma
        Rng rng(cfg.seed ^ 0x77);
        bool mono_ok = true, contract_ok = true;
        for (int t = 0; t < 10; ++t) {
            CellSet base = sigma[2];
            std::vector<std::uint64_t> asub, bsub;
            for (std::uint64_t c : base.cells) {
                if (rng.below(2)) asub.push_back(c);
                if (rng.below(2)) bsub.push_back(c);
            }
            if (asub.empty()) asub.push_back(base.cells[0]);
            for (std::uint64_t c : asub) bsub.push_back(c);  // force A subset B
            CellSet a = make_cellset(2, asub);
            CellSet b = make_cellset(2, bsub);
            mono_ok = mono_ok && cellset_subset(sigma_step(a), sigma_step(b));
            int q = 5;
            HausdorffBounds ab = hausdorff_taxi(a, b, q);
            HausdorffBounds sab = hausdorff_taxi(sigma_step(a), sigma_step(b), q + 1);
            contract_ok = contract_ok &&
                          sab.upper <= ab.upper / 3 + make_rat(2, pow3(q + 1));
        }
        rep.add("sigma is monotone on sampled subsets", mono_ok);
        rep.add("sigma contracts Hausdorff bounds by 1/3 plus slack", contract_ok);
        for (const Check& c : hausdorff_he_ht_check(sigma[1], sigma[2], 2).checks)
            rep.checks.push_back(c);
        for (const Check& c : hausdorff_he_ht_check(u0, sigma[2], 2).checks)
            rep.checks.push_back(c);
    }
    return rep;
}

// ----------------------------------------------------------------- gluing

inline Report gluing_checks(const std::vector<GlueSegment>& msegs,
                            const std::vector<GlueSegment>& nsegs) {
    Report rep;
    rep.add("M segment table has 8 records", msegs.size() == 8,
            std::to_string(msegs.size()) + " records");
    rep.add("N segment table has 12 records", nsegs.size() == 12,
            std::to_string(nsegs.size()) + " records");

    std::vector<Rat> params = {Rat(0), make_rat(1, 3), make_rat(1, 2), make_rat(2, 3), Rat(1)};
    for (auto [segs, name] :
         {std::pair<const std::vector<GlueSegment>*, const char*>{&msegs, "M"}, {&nsegs, "N"}}) {
        bool alpha_ok = true, rel_ok = true, iso_ok = true;
        std::string bad;
        for (const GlueSegment& s : *segs) {
            for (const Rat& r : params) {
                auto [a, b] = segment_points(s, r);
                Point2 pa = alpha(a.first, to_point(a.second));
                Point2 pb = alpha(b.first, to_point(b.second));
                if (!(pa == pb)) {
                    alpha_ok = false;
                    if (bad.empty())
                        bad = cell_str(s.a) + "-" + cell_str(s.b) + " r=" + rat_str(r);
                }
                if (!glue_related_in(*segs, a, b) || !glue_related_in(*segs, b, a))
                    rel_ok = false;
                for (const Rat& t : params) {
                    auto [c, d] = segment_points(s, t);
                    for (auto metric : {+[](const BoundaryPoint& u, const BoundaryPoint& v) {
                                            return path_metric_m0(u, v);
                                        },
                                        +[](const BoundaryPoint& u, const BoundaryPoint& v) {
                                            return taxicab(to_point(u), to_point(v));
                                        }}) {
                        if (metric(a.second, c.second) != metric(b.second, d.second))
                            iso_ok = false;
                    }
                }
            }
        }
        rep.add(std::string("glued pairs coincide under alpha (") + name + ")", alpha_ok, bad);
        rep.add(std::string("glue relation symmetric on its segments (") + name + ")", rel_ok);
        rep.add(std::string("segment identification is isometric (") + name + ")", iso_ok);
    }
    return rep;
}

// ------------------------------------------------------------ determinism

inline Report determinism_checks(const VerifyConfig& cfg) {
    Report rep;
    rep.add("render carpet is byte-stable", svg_carpet(3) == svg_carpet(3));
    LatticeGraph g = build_lattice(2, Variant::M);
    rep.add("render lattice is byte-stable", svg_lattice(g) == svg_lattice(g));
    rep.add("solution csv is byte-stable",
            solution_csv(two_state_example()) == solution_csv(two_state_example()));
    auto text = [&] {
        std::string out;
        for (const Check& c : taxicab_checks(cfg).checks)
            out += c.label + (c.pass ? "1" : "0") + c.detail;
        return out;
    };
    rep.add("seeded sweep report is byte-stable", text() == text());
    return rep;
}

// ------------------------------------------------------------------ suites

struct SuiteResult {
    std::string name;
    Report report;
};

inline std::vector<std::string> suite_names() {
    return {"taxicab",  "ternary", "gluing",  "squarespace", "nqm",        "bilipschitz",
            "stability", "scaling", "solvers", "cauchy",      "hutchinson", "determinism"};
}

inline Report run_suite(const std::string& name, const LatticeStore& store,
                        const VerifyConfig& cfg, bool corrupt_glue_table = false) {
    if (name == "taxicab") return taxicab_checks(cfg);
    if (name == "ternary") return ternary_checks(cfg);
    if (name == "gluing") {
        auto msegs = glue_segments(Variant::M);
        auto nsegs = glue_segments(Variant::N);
        if (corrupt_glue_table && !msegs.empty()) msegs[0].b = {2, 2};  // negative control
        return gluing_checks(msegs, nsegs);
    }
    if (name == "squarespace") return squarespace_checks(store, 3, std::min(4, cfg.k_max));
    if (name == "nqm") return nqm_checks(store, cfg);
    if (name == "bilipschitz") return bilipschitz_checks(store, cfg);
    if (name == "stability") return stability_checks(store, cfg);
    if (name == "scaling") return scaling_checks(store, cfg);
    if (name == "solvers") return solver_checks(cfg);
    if (name == "cauchy") return cauchy_checks(store, cfg);
    if (name == "hutchinson") return hutchinson_checks(store, cfg);
    if (name == "determinism") return determinism_checks(cfg);
    throw input_error("unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> run_all_suites(const LatticeStore& store, const VerifyConfig& cfg,
                                               bool corrupt_glue_table = false) {
    std::vector<SuiteResult> out;
    for (const std::string& name : suite_names())
        out.push_back({name, run_suite(name, store, cfg, corrupt_glue_table)});
    return out;
}

}  // namespace carpet
