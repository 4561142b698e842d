#pragma once

#include "carpet/boundary.hpp"
#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/report.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace carpet {

// A candidate square metric space probed through its boundary embedding:
// dist(p, q) = d_X(S_X(p), S_X(q)).  The validators below check the square
// space axioms instead of assuming them.
struct MetricOracle {
    std::string name;
    std::function<Rat(const BoundaryPoint&, const BoundaryPoint&)> dist;
};

inline MetricOracle m0_path_oracle() {
    return {"M0 path metric", [](const BoundaryPoint& a, const BoundaryPoint& b) {
                return path_metric_m0(a, b);
            }};
}

inline MetricOracle u0_taxicab_oracle() {
    return {"U0 taxicab", [](const BoundaryPoint& a, const BoundaryPoint& b) {
                return taxicab(to_point(a), to_point(b));
            }};
}

// All boundary points with side parameter a/3^depth, corners deduplicated.
inline std::vector<BoundaryPoint> boundary_grid(int depth) {
    if (depth < 1) throw input_error("boundary_grid: depth must be >= 1");
    Int n = pow3(depth);
    std::vector<BoundaryPoint> pts;
    for (Int a = 0; a <= n; ++a) {
        Rat r = make_rat(a, n);
        pts.push_back(boundary_point(r, 0));
        pts.push_back(boundary_point(r, 1));
        if (a != 0 && a != n) {
            pts.push_back(boundary_point(Rat(0), r));
            pts.push_back(boundary_point(Rat(1), r));
        }
    }
    return pts;
}

// (sq1): along each side, oracle distances coincide with the unit interval.
inline Report validate_sq1(const MetricOracle& m, int depth) {
    if (depth < 1) throw input_error("validate_sq1: depth must be >= 1");
    Report rep;
    Int n = pow3(depth);
    std::size_t checked = 0, bad = 0;
    std::string first_bad;
    auto side_point = [](int side, const Rat& r) {
        switch (side) {
            case 0: return boundary_point(r, 0);
            case 1: return boundary_point(r, 1);
            case 2: return boundary_point(Rat(0), r);
            default: return boundary_point(Rat(1), r);
        }
    };
    for (int side = 0; side < 4; ++side) {
        for (Int a = 0; a <= n; ++a) {
            for (Int b = a + 1; b <= n; ++b) {
                Rat r = make_rat(a, n), s = make_rat(b, n);
                Rat want = s - r;
                Rat got = m.dist(side_point(side, r), side_point(side, s));
                ++checked;
                if (got != want) {
                    ++bad;
                    if (first_bad.empty())
                        first_bad = "side " + std::to_string(side) + " r=" + rat_str(r) +
                                    " s=" + rat_str(s) + " got " + rat_str(got) + " want " +
                                    rat_str(want);
                }
            }
        }
    }
    rep.add("sq1[" + m.name + "] depth " + std::to_string(depth), bad == 0,
            bad == 0 ? std::to_string(checked) + " pairs" : first_bad);
    return rep;
}

// (sq2): boundary distances dominate taxicab (and stay bounded by 2).
inline Report validate_sq2(const MetricOracle& m, int depth) {
    if (depth < 1) throw input_error("validate_sq2: depth must be >= 1");
    Report rep;
    auto pts = boundary_grid(depth);
    std::size_t checked = 0, bad = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rat got = m.dist(pts[i], pts[j]);
            Rat lo = taxicab(to_point(pts[i]), to_point(pts[j]));
            ++checked;
            if (got < lo || got > 2) {
                ++bad;
                if (first_bad.empty())
                    first_bad = boundary_str(pts[i]) + " " + boundary_str(pts[j]) + " got " +
                                rat_str(got) + " taxicab " + rat_str(lo);
            }
        }
    }
    rep.add("sq2[" + m.name + "] depth " + std::to_string(depth), bad == 0,
            bad == 0 ? std::to_string(checked) + " pairs" : first_bad);
    return rep;
}

}  // namespace carpet
