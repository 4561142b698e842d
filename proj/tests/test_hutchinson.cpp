#include "carpet/hutchinson.hpp"
#include "carpet/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace carpet;

TEST_CASE("sigma step enumerates the kept cells") {
    CellSet u0 = unit_square_cells();
    CellSet s1 = sigma_step(u0);
    CHECK(s1.level == 1);
    CHECK(s1.cells.size() == 8);

    CellSet s2 = sigma_step(s1);
    CHECK(s2.cells.size() == 64);

    // a singleton cell maps to 8 cells
    CellSet one = word_cell({{2, 1}});
    CHECK(sigma_step(one).cells.size() == 8);

    CHECK(iterate(u0, 0) == u0);
    CHECK(iterate(u0, 2) == s2);
    CHECK_THROWS_AS(iterate(u0, 20), limit_error);
    CHECK_THROWS_AS(make_cellset(1, {}), input_error);
    CHECK_THROWS_AS(make_cellset(0, {5}), input_error);
}

TEST_CASE("subdivision and subset checks") {
    CellSet u0 = unit_square_cells();
    CellSet fine = subdivide_to(u0, 2);
    CHECK(fine.cells.size() == 81);
    CHECK(cellset_subset(iterate(u0, 2), u0));
    CHECK(cellset_subset(word_cell({{0, 0}, {2, 2}}), word_cell({{0, 0}})));
    CHECK(!cellset_subset(word_cell({{0, 0}}), word_cell({{0, 0}, {2, 2}})));
    CHECK_THROWS_AS(subdivide_to(fine, 1), input_error);
}

TEST_CASE("hausdorff bounds bracket the true distance") {
    CellSet u0 = unit_square_cells();
    CellSet s1 = sigma_step(u0);

    // identical sets: lower 0, upper the sampling slack
    HausdorffBounds same = hausdorff_taxi(s1, s1, 4);
    CHECK(same.lower == 0);
    CHECK(same.upper == make_rat(2, pow3(4)));

    // d_Ht(U0, sigma U0) = 1/6, attained at the (never ternary-aligned) hole
    // center; the q=3 sample nearest the center sits 4/27 from the kept cells
    HausdorffBounds d0 = hausdorff_taxi(u0, s1, 3);
    CHECK(d0.lower == make_rat(4, 27));
    CHECK(d0.lower <= make_rat(1, 6));
    CHECK(d0.upper >= make_rat(1, 6));

    // separated singletons: exact corner-to-corner taxicab distance
    CellSet a = word_cell({{0, 0}});
    CellSet b = word_cell({{2, 2}});
    HausdorffBounds ab = hausdorff_taxi(a, b, 3);
    CHECK(ab.lower == make_rat(4, 3));  // sup at (0,0) against [2/3,1]^2
    CHECK_THROWS_AS(hausdorff_taxi(a, b, 0), input_error);
    CHECK_THROWS_AS(hausdorff_taxi(a, b, 11), limit_error);
}

TEST_CASE("contraction of the hausdorff distance under sigma") {
    CellSet u0 = unit_square_cells();
    std::vector<CellSet> sig{u0};
    for (int p = 1; p <= 5; ++p) sig.push_back(sigma_step(sig.back()));
    HausdorffBounds d0 = hausdorff_taxi(sig[0], sig[1], 3);
    for (int p = 0; p <= 4; ++p) {
        HausdorffBounds dp = hausdorff_taxi(sig[static_cast<std::size_t>(p)],
                                            sig[static_cast<std::size_t>(p + 1)], p + 3);
        REQUIRE(dp.lower <= d0.upper / pow3(p));
        REQUIRE(dp.upper <= d0.upper / pow3(p) + make_rat(2, pow3(p + 3)));
    }
}

TEST_CASE("diameter of address cells") {
    CHECK(cellset_diameter_taxi(unit_square_cells()) == 2);
    CHECK(cellset_diameter_taxi(word_cell({{1, 0}})) == make_rat(2, 3));
    CHECK(cellset_diameter_taxi(word_cell({{1, 0}, {2, 2}, {0, 1}})) == make_rat(2, 27));
}

TEST_CASE("monotonicity of sigma") {
    Rng rng(5);
    CellSet base = iterate(unit_square_cells(), 2);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::uint64_t> sub;
        for (std::uint64_t c : base.cells)
            if (rng.below(2)) sub.push_back(c);
        if (sub.empty()) sub.push_back(base.cells[0]);
        CellSet a = make_cellset(2, sub);
        REQUIRE(cellset_subset(sigma_step(a), sigma_step(base)));
    }
}

TEST_CASE("he/ht comparison in squared form") {
    CellSet u0 = unit_square_cells();
    CellSet s1 = sigma_step(u0);
    CHECK(hausdorff_he_ht_check(u0, s1, 2).pass());
    CHECK(hausdorff_he_ht_check(word_cell({{0, 0}}), word_cell({{2, 2}}), 2).pass());
}

TEST_CASE("cell set text format round trips") {
    CellSet s2 = iterate(unit_square_cells(), 2);
    CHECK(parse_cellset(format_cellset(s2)) == s2);
    CellSet u0 = unit_square_cells();
    CHECK(parse_cellset(format_cellset(u0)) == u0);
    CHECK_THROWS_AS(parse_cellset("nope"), parse_error);
    CHECK_THROWS_AS(parse_cellset("cells 1\n(3,0)\n"), parse_error);
    CHECK_THROWS_AS(parse_cellset("cells 2\n(0,0)\n"), parse_error);
    CHECK_THROWS_AS(parse_cellset("cells 1\n-\n"), parse_error);
}
