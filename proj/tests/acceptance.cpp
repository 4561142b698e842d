// Acceptance suite: runs every contract check at its stated size and
// tolerance (exact equality unless a check says otherwise) and prints one
// PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.
//
// Usage: acceptance [path-to-carpet-cli]

#include "carpet/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace carpet;

namespace {

struct Criterion {
    int number;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Criterion> results;

void record(int number, const std::string& name, const Report& rep) {
    std::string detail;
    for (const Check& c : rep.checks)
        if (!c.pass) {
            detail = c.label + (c.detail.empty() ? "" : ": " + c.detail);
            break;
        }
    if (detail.empty() && !rep.checks.empty()) detail = rep.checks.back().detail;
    results.push_back({number, name, rep.pass(), detail});
}

bool run_capture(const std::string& cmd, std::string& out, int& status) {
    out.clear();
    FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!f) return false;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    status = pclose(f);
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Report determinism_subprocess(const std::string& cli) {
    Report rep;
    std::string out1, out2;
    int st1 = 0, st2 = 0;
    bool ok = run_capture("\"" + cli + "\" verify nqm --seed 7 --k-max 4", out1, st1) &&
              run_capture("\"" + cli + "\" verify nqm --seed 7 --k-max 4", out2, st2);
    rep.add("two `verify nqm` runs are byte-identical",
            ok && st1 == 0 && st2 == 0 && !out1.empty() && out1 == out2);

    std::string f1 = "acceptance_render_1.svg", f2 = "acceptance_render_2.svg";
    std::string dump;
    int rs1 = 0, rs2 = 0;
    ok = run_capture("\"" + cli + "\" render carpet 3 --out " + f1, dump, rs1) &&
         run_capture("\"" + cli + "\" render carpet 3 --out " + f2, dump, rs2);
    std::string s1 = slurp(f1), s2 = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    rep.add("two `render carpet 3` runs are byte-identical",
            ok && rs1 == 0 && rs2 == 0 && !s1.empty() && s1 == s2);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    LatticeStore store(6);
    VerifyConfig cfg{1, 6};

    {
        Report rep;
        for (int k = 0; k <= 3; ++k) rep.checks.push_back(nqm_equiv_exhaustive(store, k));
        rep.checks.push_back(nqm_equiv_sampled(store, 4, 2000, cfg.seed));
        record(1, "nqm formula equals BFS geodesics (N, k<=3 exhaustive, k=4 sampled)", rep);
    }
    {
        Report rep;
        rep.checks.push_back(nqm_worked_pair(store));
        record(2, "worked N^2 pair with h=5, v=4 has distance exactly 1", rep);
    }
    {
        Report rep;
        Rat max_ratio(0);
        for (int k = 0; k <= 5; ++k) {
            std::optional<std::size_t> sample;
            if (k >= 4) sample = 10000;
            BilipschitzSweep s = verify_bilipschitz(store, k, sample, cfg.seed);
            rep.checks.push_back(bilipschitz_band_check(s, k, sample));
            if (s.max_ratio() > max_ratio) max_ratio = s.max_ratio();
        }
        rep.checks.push_back(hole_pair_check(store));
        if (rep.pass())
            rep.checks.back().detail += "; max observed ratio " + rat_str(max_ratio);
        record(3, "bilipschitz band taxicab <= d <= 2*taxicab with 5/3 witness", rep);
    }
    {
        Report rep;
        for (Variant v : {Variant::M, Variant::N})
            for (int k = 0; k <= 2; ++k) rep.checks.push_back(stability_exhaustive(store, v, k, 2));
        record(4, "corner distances stable under 2 extra refinement levels (k<=2)", rep);
    }
    {
        record(5, "sq1/sq2 validators pass for M0 path, U0 taxicab, glued levels k<=3",
               squarespace_checks(store));
    }
    {
        Report rep;
        for (Variant v : {Variant::M, Variant::N})
            for (int k = 0; k <= 2; ++k) rep.checks.push_back(scaling_exhaustive(store, v, k));
        record(6, "per-copy scaling: prefixed pair distance is exactly 1/3 (k<=2)", rep);
    }
    {
        record(7, "corecursive solvers: exact identities, worked values, membership, contraction",
               solver_checks(cfg));
    }
    {
        record(8, "cauchy rate 2*3^-k for 100 random systems and the non-short witness",
               cauchy_checks(store, cfg, 100));
    }
    {
        record(9, "ternary round-trip on 1000 random rationals, dual forms of 1/3",
               ternary_checks(cfg));
    }
    {
        record(10, "hutchinson: iterate matches lattice, certified Hausdorff rate, diameter rate",
               hutchinson_checks(store, cfg));
    }
    {
        record(11, "taxicab/euclid bilipschitz constant 2 in squared form, 1000 pairs",
               taxicab_checks(cfg));
    }
    {
        if (argc > 1)
            record(12, "render and verify outputs byte-identical across runs",
                   determinism_subprocess(argv[1]));
        else
            record(12, "render and verify outputs byte-identical (in-process)",
                   determinism_checks(cfg));
    }

    bool all = true;
    for (const Criterion& c : results) {
        std::printf("%s  %2d. %s%s%s\n", c.pass ? "PASS" : "FAIL", c.number, c.name.c_str(),
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES");
    return all ? 0 : 1;
}
