#pragma once

#include "carpet/cell.hpp"
#include "carpet/gluing.hpp"
#include "carpet/lattice.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/report.hpp"
#include "carpet/rng.hpp"
#include "carpet/ternary.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace carpet {

// A finite guarded equation system: every state has exactly one transition
// b -> (label, succ(b)).  Square systems carry a cell label and solve into
// U0 (or the carpet, for variant M); interval systems carry xi in [0,1-delta]
// and solve into [0,1].
struct Coalgebra {
    bool interval = false;
    Variant variant = Variant::M;      // square systems
    Rat delta = make_rat(1, 3);        // interval systems; fixed 1/3 otherwise
    std::vector<std::string> names;
    std::vector<int> succ;
    std::vector<CellIndex> labels;     // square
    std::vector<Rat> xis;              // interval

    std::size_t size() const { return names.size(); }
    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline void validate_coalgebra(const Coalgebra& c) {
    if (c.names.empty()) throw input_error("coalgebra: no states");
    for (std::size_t i = 0; i < c.names.size(); ++i)
        for (std::size_t j = i + 1; j < c.names.size(); ++j)
            if (c.names[i] == c.names[j])
                throw input_error("coalgebra: duplicate state '" + c.names[i] + "'");
    if (c.succ.size() != c.size()) throw input_error("coalgebra: missing transitions");
    for (int s : c.succ)
        if (s < 0 || static_cast<std::size_t>(s) >= c.size())
            throw input_error("coalgebra: dangling successor");
    if (c.interval) {
        if (c.delta < 0 || c.delta >= 1) throw input_error("coalgebra: delta must be in [0,1)");
        if (c.xis.size() != c.size()) throw input_error("coalgebra: missing xi values");
        for (const Rat& xi : c.xis)
            if (xi < 0 || xi > 1 - c.delta)
                throw input_error("coalgebra: xi " + rat_str(xi) + " outside [0,1-delta]");
    } else {
        if (c.labels.size() != c.size()) throw input_error("coalgebra: missing labels");
        for (const CellIndex& m : c.labels)
            if (!cell_valid(c.variant, m))
                throw input_error("coalgebra: label " + cell_str(m) + " invalid for variant " +
                                  std::string(1, variant_char(c.variant)));
    }
}

inline Coalgebra square_coalgebra(
    Variant v, const std::vector<std::tuple<std::string, CellIndex, std::string>>& rows) {
    Coalgebra c;
    c.interval = false;
    c.variant = v;
    for (const auto& [name, label, succ] : rows) {
        c.names.push_back(name);
        c.labels.push_back(label);
    }
    for (const auto& [name, label, succ] : rows) {
        int s = c.index_of(succ);
        if (s < 0) throw input_error("coalgebra: dangling successor '" + succ + "'");
        c.succ.push_back(s);
    }
    validate_coalgebra(c);
    return c;
}

inline Coalgebra interval_coalgebra(
    const Rat& delta, const std::vector<std::tuple<std::string, Rat, std::string>>& rows) {
    Coalgebra c;
    c.interval = true;
    c.delta = delta;
    for (const auto& [name, xi, succ] : rows) {
        c.names.push_back(name);
        c.xis.push_back(xi);
    }
    for (const auto& [name, xi, succ] : rows) {
        int s = c.index_of(succ);
        if (s < 0) throw input_error("coalgebra: dangling successor '" + succ + "'");
        c.succ.push_back(s);
    }
    validate_coalgebra(c);
    return c;
}

// Line format:
//   variant M|N            or   variant interval delta <rat>
//   <name> -> (i,j) <next> or   <name> -> <xi> <next>
// Blank lines and '#' comments are skipped.
inline Coalgebra parse_coalgebra(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw parse_error("coalgebra line " + std::to_string(lineno) + ": " + msg);
    };
    Coalgebra c;
    bool have_header = false;
    std::vector<std::string> succ_names;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (!have_header) {
            if (tok != "variant") fail("expected 'variant M|N|interval ...'");
            std::string kind;
            if (!(ls >> kind)) fail("missing variant kind");
            if (kind == "M" || kind == "N") {
                c.interval = false;
                c.variant = kind == "M" ? Variant::M : Variant::N;
            } else if (kind == "interval") {
                c.interval = true;
                std::string dtok, dval;
                if (!(ls >> dtok >> dval) || dtok != "delta") fail("expected 'delta <rat>'");
                try {
                    c.delta = parse_rat(dval);
                } catch (const parse_error& e) {
                    fail(e.what());
                }
            } else {
                fail("unknown variant '" + kind + "'");
            }
            have_header = true;
            continue;
        }
        std::string name = tok, arrow, label, next;
        if (!(ls >> arrow >> label >> next) || arrow != "->")
            fail("expected '<name> -> <label> <next>'");
        std::string extra;
        if (ls >> extra) fail("trailing tokens after '" + next + "'");
        c.names.push_back(name);
        succ_names.push_back(next);
        if (c.interval) {
            try {
                c.xis.push_back(parse_rat(label));
            } catch (const parse_error& e) {
                fail(e.what());
            }
        } else {
            if (label.size() != 5 || label[0] != '(' || label[2] != ',' || label[4] != ')' ||
                label[1] < '0' || label[1] > '2' || label[3] < '0' || label[3] > '2')
                fail("bad cell label '" + label + "'");
            c.labels.push_back({label[1] - '0', label[3] - '0'});
        }
    }
    if (!have_header) throw parse_error("coalgebra: empty input");
    for (const std::string& next : succ_names) {
        int s = c.index_of(next);
        if (s < 0) throw parse_error("coalgebra: dangling successor '" + next + "'");
        c.succ.push_back(s);
    }
    try {
        validate_coalgebra(c);
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
    return c;
}

// Exact solution of an interval system.  Orbits of a finite system are
// eventually periodic, so each value is a preperiod partial sum plus the
// geometric series of its cycle; every returned value is re-checked against
// the defining identity r_b = xi_b + delta * r_succ(b).
inline std::vector<Rat> solve_interval(const Coalgebra& c) {
    if (!c.interval) throw input_error("solve_interval: not an interval system");
    validate_coalgebra(c);
    std::size_t n = c.size();
    std::vector<std::optional<Rat>> val(n);
    for (std::size_t start = 0; start < n; ++start) {
        if (val[start]) continue;
        std::vector<int> path;
        std::map<int, int> at;  // state -> position on path
        int cur = static_cast<int>(start);
        while (!val[static_cast<std::size_t>(cur)] && !at.count(cur)) {
            at[cur] = static_cast<int>(path.size());
            path.push_back(cur);
            cur = c.succ[static_cast<std::size_t>(cur)];
        }
        int solved_upto;  // first path index with a known value, from the back
        if (val[static_cast<std::size_t>(cur)]) {
            solved_upto = static_cast<int>(path.size());
        } else {
            int i = at[cur];
            int len = static_cast<int>(path.size()) - i;
            // cycle entry value: sum_{t<len} delta^t xi / (1 - delta^len)
            Rat num(0), dpow(1);
            for (int t = 0; t < len; ++t) {
                num += dpow * c.xis[static_cast<std::size_t>(path[static_cast<std::size_t>(i + t)])];
                dpow *= c.delta;
            }
            val[static_cast<std::size_t>(path[static_cast<std::size_t>(i)])] = num / (1 - dpow);
            // walk the cycle once more to fill the rest backwards
            for (int t = len - 1; t >= 1; --t) {
                int s = path[static_cast<std::size_t>(i + t)];
                int s1 = c.succ[static_cast<std::size_t>(s)];
                val[static_cast<std::size_t>(s)] =
                    c.xis[static_cast<std::size_t>(s)] + c.delta * *val[static_cast<std::size_t>(s1)];
            }
            solved_upto = i;
        }
        for (int t = solved_upto - 1; t >= 0; --t) {
            int s = path[static_cast<std::size_t>(t)];
            int s1 = c.succ[static_cast<std::size_t>(s)];
            val[static_cast<std::size_t>(s)] =
                c.xis[static_cast<std::size_t>(s)] + c.delta * *val[static_cast<std::size_t>(s1)];
        }
    }
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = *val[i];
        if (out[i] < 0 || out[i] > 1) throw error("solve_interval: value escaped [0,1]");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (out[i] != c.xis[i] + c.delta * out[static_cast<std::size_t>(c.succ[i])])
            throw error("solve_interval: fixed-point identity failed");
    return out;
}

enum class Membership { member, non_member };

// Digit criterion for the carpet: a point belongs iff some pair of ternary
// expansions of its coordinates avoids the digit pair (1,1) everywhere.
// Exact for every rational in [0,1]^2: expansions are eventually periodic,
// so positions up to the aligned preperiod plus one lcm period decide.
inline Membership carpet_membership(const Point2& p, std::size_t depth = 4096) {
    if (!in_unit_square(p)) throw input_error("carpet_membership: point outside U0");
    auto expansions = [](const Rat& v) {
        std::vector<TernaryStream> out{to_ternary(v, TernaryVariant::low)};
        if (is_ternary_rational(v) && v != 0 && v != 1)
            out.push_back(to_ternary(v, TernaryVariant::high));
        return out;
    };
    auto xs = expansions(p.x);
    auto ys = expansions(p.y);
    for (const auto& sx : xs) {
        for (const auto& sy : ys) {
            std::size_t pre = std::max(sx.preperiod.size(), sy.preperiod.size());
            std::size_t period = std::lcm(sx.period.size(), sy.period.size());
            if (pre + period > depth)
                throw limit_error("carpet_membership: digit search exceeds depth");
            bool ok = true;
            for (std::size_t t = 0; t < pre + period; ++t) {
                if (ternary_digit(sx, t) == 1 && ternary_digit(sy, t) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return Membership::member;
        }
    }
    return Membership::non_member;
}

// Exact solution of a square system: the two coordinates split into interval
// systems with xi = i/3 and j/3 at delta = 1/3.  Verifies the fixed-point
// identity, and for variant M certifies carpet membership of every value.
inline std::vector<Point2> solve_square(const Coalgebra& c) {
    if (c.interval) throw input_error("solve_square: not a square system");
    validate_coalgebra(c);
    Coalgebra cx, cy;
    cx.interval = cy.interval = true;
    cx.delta = cy.delta = make_rat(1, 3);
    cx.names = cy.names = c.names;
    cx.succ = cy.succ = c.succ;
    for (const CellIndex& m : c.labels) {
        cx.xis.push_back(make_rat(m.i, 3));
        cy.xis.push_back(make_rat(m.j, 3));
    }
    std::vector<Rat> vx = solve_interval(cx);
    std::vector<Rat> vy = solve_interval(cy);
    std::vector<Point2> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = {vx[i], vy[i]};
    for (std::size_t i = 0; i < c.size(); ++i) {
        Point2 expect = alpha(c.labels[i], out[static_cast<std::size_t>(c.succ[i])]);
        if (!(out[i] == expect)) throw error("solve_square: fixed-point identity failed");
    }
    if (c.variant == Variant::M)
        for (const Point2& z : out)
            if (carpet_membership(z) != Membership::member)
                throw error("solve_square: value " + point_str(z) + " failed carpet membership");
    return out;
}

// The level-k approximant: the first k labels along b's orbit with tip
// corner (0,0).  Transitions are single-valued, so the orbit word is already
// the least representative; systems built from boundary dynamics must pick
// least representatives in their transitions (side_embedding does).
inline CornerAddress approx_h(const Coalgebra& c, int state, int k) {
    if (c.interval) throw input_error("approx_h: interval system");
    if (state < 0 || static_cast<std::size_t>(state) >= c.size())
        throw input_error("approx_h: no such state");
    if (k < 0) throw input_error("approx_h: negative level");
    CornerAddress out;
    out.variant = c.variant;
    int cur = state;
    for (int t = 0; t < k; ++t) {
        out.word.push_back(c.labels[static_cast<std::size_t>(cur)]);
        cur = c.succ[static_cast<std::size_t>(cur)];
    }
    return out;
}

// Certifies the approximation rate: successive approximants stay within
// 2*3^-k of each other on the lattice, and their evaluations converge to the
// exact solution at the same rate.
inline Report cauchy_rate_check(const Coalgebra& c, int state, int k_max,
                                const LatticeStore& store) {
    if (c.interval || c.variant != Variant::M)
        throw input_error("cauchy_rate_check: needs a variant-M square system");
    Report rep;
    std::vector<Point2> sol = solve_square(c);
    Point2 target = sol[static_cast<std::size_t>(state)];
    bool lattice_ok = true, eval_ok = true;
    std::string bad;
    std::vector<CornerAddress> h(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) h[static_cast<std::size_t>(k)] = approx_h(c, state, k);
    for (int j = 1; j <= k_max; ++j) {
        const LatticeGraph& g = store.get(j, Variant::M);
        auto hops = bfs_hops(g, corner_vertex(g, h[static_cast<std::size_t>(j)]));
        for (int k = 0; k < j; ++k) {
            CornerAddress rk = refine_corner(h[static_cast<std::size_t>(k)], j - k);
            Rat d = make_rat(hops[static_cast<std::size_t>(corner_vertex(g, rk))], pow3(j));
            if (d > make_rat(2, pow3(k))) {
                lattice_ok = false;
                if (bad.empty())
                    bad = "state " + c.names[static_cast<std::size_t>(state)] + " k=" +
                          std::to_string(k) + " j=" + std::to_string(j) + " d=" + rat_str(d);
            }
        }
    }
    for (int k = 0; k <= k_max; ++k) {
        Point2 pk = eval_word(h[static_cast<std::size_t>(k)].word, Point2{Rat(0), Rat(0)});
        if (taxicab(pk, target) > make_rat(2, pow3(k))) {
            eval_ok = false;
            if (bad.empty()) bad = "eval gap at k=" + std::to_string(k);
        }
    }
    rep.add("cauchy rate d(h_k,h_j) <= 2*3^-k", lattice_ok, bad);
    rep.add("eval(h_k) -> solution at 2*3^-k", eval_ok, bad);
    return rep;
}

// One step of the solution operator Phi(f) = alpha o (F f) o e.
inline std::vector<Rat> contraction_step_interval(const Coalgebra& c, const std::vector<Rat>& f) {
    std::vector<Rat> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = c.xis[i] + c.delta * f[static_cast<std::size_t>(c.succ[i])];
    return out;
}

inline std::vector<Point2> contraction_step_square(const Coalgebra& c,
                                                   const std::vector<Point2>& f) {
    std::vector<Point2> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = alpha(c.labels[i], f[static_cast<std::size_t>(c.succ[i])]);
    return out;
}

// Iterates Phi from several random starting assignments and checks all
// trajectories land within the worst-case contraction bound 2*delta^iters of
// the closed-form solution.
inline Report contraction_uniqueness(const Coalgebra& c, int trials, int iters,
                                     std::uint64_t seed = 1) {
    validate_coalgebra(c);
    if (trials < 1 || iters < 0) throw input_error("contraction_uniqueness: bad parameters");
    Rng rng(seed);
    Rat delta = c.interval ? c.delta : make_rat(1, 3);
    Rat bound(2);
    for (int t = 0; t < iters; ++t) bound *= delta;
    Rat worst(0);
    if (c.interval) {
        std::vector<Rat> sol = solve_interval(c);
        for (int t = 0; t < trials; ++t) {
            std::vector<Rat> f(c.size());
            for (auto& v : f) v = rng.rat_in_unit(729);
            for (int i = 0; i < iters; ++i) f = contraction_step_interval(c, f);
            for (std::size_t i = 0; i < c.size(); ++i) {
                Rat dev = rat_abs(f[i] - sol[i]);
                if (dev > worst) worst = dev;
            }
        }
    } else {
        std::vector<Point2> sol = solve_square(c);
        for (int t = 0; t < trials; ++t) {
            std::vector<Point2> f(c.size());
            for (auto& v : f) v = {rng.rat_in_unit(729), rng.rat_in_unit(729)};
            for (int i = 0; i < iters; ++i) f = contraction_step_square(c, f);
            for (std::size_t i = 0; i < c.size(); ++i) {
                Rat dev = taxicab(f[i], sol[i]);
                if (dev > worst) worst = dev;
            }
        }
    }
    Report rep;
    rep.add("contraction trajectories within 2*delta^iters", worst <= bound,
            "max deviation " + rat_str(worst) + " bound " + rat_str(bound));
    return rep;
}

// CSV: square systems emit state,x,y,member,verified; interval systems emit
// state,value,verified.  Exact fraction strings throughout.
inline std::string solution_csv(const Coalgebra& c) {
    std::string out;
    if (c.interval) {
        std::vector<Rat> sol = solve_interval(c);
        out += "state,value,verified\n";
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool ok = sol[i] == c.xis[i] + c.delta * sol[static_cast<std::size_t>(c.succ[i])];
            out += c.names[i] + "," + rat_str(sol[i]) + "," + (ok ? "true" : "false") + "\n";
        }
        return out;
    }
    std::vector<Point2> sol = solve_square(c);
    out += "state,x,y,member,verified\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        bool ok = sol[i] == alpha(c.labels[i], sol[static_cast<std::size_t>(c.succ[i])]);
        std::string member =
            c.variant == Variant::M
                ? (carpet_membership(sol[i]) == Membership::member ? "true" : "false")
                : "-";
        out += c.names[i] + "," + rat_str(sol[i].x) + "," + rat_str(sol[i].y) + "," + member +
               "," + (ok ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace carpet
