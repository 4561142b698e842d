// carpet: exact distances, equation solving, rendering, and verification
// sweeps for finite Sierpinski carpet approximations.

#include "carpet/corecursive.hpp"
#include "carpet/gluing.hpp"
#include "carpet/hutchinson.hpp"
#include "carpet/lattice.hpp"
#include "carpet/svg.hpp"
#include "carpet/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace carpet;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_limit = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << data;
}

std::string decimal(const Rat& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v.convert_to<double>());
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void print_report(const std::string& suite, const Report& rep, const std::string& format) {
    for (const Check& c : rep.checks) {
        if (format == "jsonl") {
            std::cout << "{\"suite\":\"" << json_escape(suite) << "\",\"check\":\""
                      << json_escape(c.label) << "\",\"pass\":" << (c.pass ? "true" : "false")
                      << ",\"detail\":\"" << json_escape(c.detail) << "\"}\n";
        } else {
            std::cout << (c.pass ? "PASS" : "FAIL") << " [" << suite << "] " << c.label;
            if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
            std::cout << "\n";
        }
    }
}

Address parse_cli_address(Variant v, int level, const std::string& text) {
    // accept either the bare word@tip form or the full prefixed format
    std::string full = text;
    if (text.empty() || (text[0] != 'M' && text[0] != 'N'))
        full = std::string(1, variant_char(v)) + ":" + text;
    Address a = parse_address(full);
    if (a.variant != v) throw input_error("address variant does not match the variant argument");
    if (a.level() != level)
        throw input_error("address has level " + std::to_string(a.level()) + ", expected " +
                          std::to_string(level));
    return a;
}

int run(int argc, char** argv) {
    CLI::App app{"exact metric geometry of finite Sierpinski carpet approximations"};
    app.require_subcommand(1);
    app.fallthrough();

    int k_max = 6;
    std::uint64_t seed = 1;
    std::string format = "text";
    app.add_option("--k-max", k_max, "largest lattice level to build")->capture_default_str();
    app.add_option("--seed", seed, "seed for sampled sweeps")->capture_default_str();
    app.add_option("--format", format, "output format: text|csv|jsonl")
        ->check(CLI::IsMember({"text", "csv", "jsonl"}))
        ->capture_default_str();

    // distance
    auto* cmd_distance = app.add_subcommand("distance", "quotient-metric distance between addresses");
    std::string var_str, addr_a, addr_b;
    int level = 0;
    cmd_distance->add_option("variant", var_str, "M or N")->required()->check(CLI::IsMember({"M", "N"}));
    cmd_distance->add_option("level", level, "word length of the addresses")->required();
    cmd_distance->add_option("addrA", addr_a, "first address, e.g. (0,1)(2,0)@(1/3,0)")->required();
    cmd_distance->add_option("addrB", addr_b, "second address")->required();

    // solve
    auto* cmd_solve = app.add_subcommand("solve", "solve a coalgebra equation system exactly");
    std::string solve_path;
    cmd_solve->add_option("file", solve_path, "coalgebra file")->required();

    // render
    auto* cmd_render = app.add_subcommand("render", "deterministic SVG output");
    std::string render_what, render_arg, render_variant = "M", render_out;
    int render_depth = 3;
    cmd_render->add_option("what", render_what, "carpet|lattice|cells|solution")
        ->required()
        ->check(CLI::IsMember({"carpet", "lattice", "cells", "solution"}));
    cmd_render->add_option("arg", render_arg, "level (carpet/lattice) or input file (cells/solution)")
        ->required();
    cmd_render->add_option("variant", render_variant, "lattice variant M|N")
        ->check(CLI::IsMember({"M", "N"}));
    cmd_render->add_option("--out", render_out, "output path")->required();
    cmd_render->add_option("--depth", render_depth, "background depth for solution renders")
        ->capture_default_str();

    // hutchinson
    auto* cmd_hutch = app.add_subcommand("hutchinson", "iterate the 8-map system, bound Hausdorff distances");
    auto* hutch_iter = cmd_hutch->add_subcommand("iterate", "cells of sigma^p(U0)");
    int hutch_p = 1;
    std::string hutch_out;
    hutch_iter->add_option("p", hutch_p, "iteration count")->required();
    hutch_iter->add_option("--out", hutch_out, "write cell set to a file instead of stdout");
    auto* hutch_hd = cmd_hutch->add_subcommand("hausdorff", "certified taxicab Hausdorff bounds");
    std::string hd_a, hd_b;
    int hd_q = -1;
    hutch_hd->add_option("fileA", hd_a, "cell set file")->required();
    hutch_hd->add_option("fileB", hd_b, "cell set file")->required();
    hutch_hd->add_option("--q", hd_q, "sampling level (default: common level + 3)");
    cmd_hutch->require_subcommand(1);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    bool corrupt_glue = false;
    int sweep_k = 5;
    cmd_verify->add_option("suite", suite, "suite name or 'all'");
    cmd_verify->add_option("--k", sweep_k, "deepest level for sampled sweeps")
        ->capture_default_str();
    cmd_verify->add_flag("--corrupt-glue-table", corrupt_glue,
                         "negative control: corrupt the gluing table fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    LatticeStore store(k_max);
    VerifyConfig cfg{seed, k_max, std::min(sweep_k, k_max)};

    if (cmd_distance->parsed()) {
        Variant v = var_str == "M" ? Variant::M : Variant::N;
        Address a = parse_cli_address(v, level, addr_a);
        Address b = parse_cli_address(v, level, addr_b);
        Rat d = general_distance(store, a, b);
        std::cout << rat_str(d) << " = " << decimal(d) << "\n";
        return exit_ok;
    }

    if (cmd_solve->parsed()) {
        Coalgebra c = parse_coalgebra(read_file(solve_path));
        std::string csv = solution_csv(c);
        if (format == "jsonl") {
            std::istringstream lines(csv);
            std::string header, line;
            std::getline(lines, header);
            std::vector<std::string> cols;
            std::istringstream hs(header);
            for (std::string col; std::getline(hs, col, ',');) cols.push_back(col);
            while (std::getline(lines, line)) {
                std::istringstream fs(line);
                std::string field;
                std::cout << "{";
                for (std::size_t i = 0; std::getline(fs, field, ','); ++i)
                    std::cout << (i ? "," : "") << "\"" << cols[i] << "\":\""
                              << json_escape(field) << "\"";
                std::cout << "}\n";
            }
        } else {
            std::cout << csv;
        }
        return exit_ok;
    }

    if (cmd_render->parsed()) {
        std::string svg;
        if (render_what == "carpet") {
            svg = svg_carpet(std::stoi(render_arg));
        } else if (render_what == "lattice") {
            Variant v = render_variant == "M" ? Variant::M : Variant::N;
            svg = svg_lattice(store.get(std::stoi(render_arg), v));
        } else if (render_what == "cells") {
            svg = svg_cells(parse_cellset(read_file(render_arg)));
        } else {
            svg = svg_solution(parse_coalgebra(read_file(render_arg)), render_depth);
        }
        write_file(render_out, svg);
        return exit_ok;
    }

    if (cmd_hutch->parsed()) {
        if (hutch_iter->parsed()) {
            std::string text = format_cellset(iterate(unit_square_cells(), hutch_p));
            if (hutch_out.empty())
                std::cout << text;
            else
                write_file(hutch_out, text);
            return exit_ok;
        }
        CellSet a = parse_cellset(read_file(hd_a));
        CellSet b = parse_cellset(read_file(hd_b));
        int q = hd_q >= 0 ? hd_q : std::max(a.level, b.level) + 3;
        HausdorffBounds bounds = hausdorff_taxi(a, b, q);
        std::cout << "lower " << rat_str(bounds.lower) << " = " << decimal(bounds.lower) << "\n"
                  << "upper " << rat_str(bounds.upper) << " = " << decimal(bounds.upper) << "\n";
        return exit_ok;
    }

    if (cmd_verify->parsed()) {
        bool all_pass = true;
        if (suite == "all") {
            for (const SuiteResult& r : run_all_suites(store, cfg, corrupt_glue)) {
                print_report(r.name, r.report, format);
                all_pass = all_pass && r.report.pass();
            }
        } else {
            Report rep = run_suite(suite, store, cfg, corrupt_glue);
            print_report(suite, rep, format);
            all_pass = rep.pass();
        }
        std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
        return all_pass ? exit_ok : exit_verify_failed;
    }

    return exit_usage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const carpet::limit_error& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return exit_limit;
    } catch (const carpet::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const carpet::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
