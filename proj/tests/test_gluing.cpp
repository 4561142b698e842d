#include "carpet/gluing.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace carpet;

namespace {
RawPoint raw(int i, int j, Rat x, Rat y) {
    return {CellIndex{i, j}, boundary_point(std::move(x), std::move(y))};
}
}  // namespace

TEST_CASE("segment tables") {
    CHECK(glue_segments(Variant::M).size() == 8);
    CHECK(glue_segments(Variant::N).size() == 12);
}

TEST_CASE("glue relation membership") {
    // vertical neighbors in column 0
    CHECK(glue_related(Variant::M, raw(0, 0, make_rat(1, 2), Rat(1)),
                       raw(0, 1, make_rat(1, 2), Rat(0))));
    // symmetrized
    CHECK(glue_related(Variant::M, raw(0, 1, make_rat(1, 2), Rat(0)),
                       raw(0, 0, make_rat(1, 2), Rat(1))));
    // center-cell identification exists only for N
    CHECK(glue_related(Variant::N, raw(1, 1, Rat(0), make_rat(1, 4)),
                       raw(0, 1, Rat(1), make_rat(1, 4))));
    // non-adjacent rows share no segment
    CHECK(!glue_related(Variant::M, raw(0, 0, make_rat(1, 2), Rat(1)),
                        raw(0, 2, make_rat(1, 2), Rat(0))));
    // mismatched parameters
    CHECK(!glue_related(Variant::M, raw(0, 0, make_rat(1, 2), Rat(1)),
                        raw(0, 1, make_rat(1, 3), Rat(0))));
    CHECK_THROWS_AS(glue_related(Variant::M, raw(1, 1, Rat(0), Rat(0)),
                                 raw(0, 1, Rat(1), Rat(0))),
                    input_error);
}

TEST_CASE("glued pairs coincide under alpha, and only glued pairs do") {
    for (Variant v : {Variant::M, Variant::N}) {
        auto segs = glue_segments(v);
        for (const auto& s : segs) {
            for (Rat r : {Rat(0), make_rat(1, 3), make_rat(1, 2), Rat(1)}) {
                auto [a, b] = segment_points(s, r);
                REQUIRE(alpha(a.first, to_point(a.second)) == alpha(b.first, to_point(b.second)));
                REQUIRE(taxicab(alpha(a.first, to_point(a.second)),
                                alpha(b.first, to_point(b.second))) == 0);
            }
        }
    }
}

TEST_CASE("shrink and alpha") {
    CHECK(shrink({0, 0}) == Point2{Rat(0), Rat(0)});
    CHECK(shrink({2, 1}) == Point2{make_rat(2, 3), make_rat(1, 3)});
    CHECK(shrink({1, 1}) == Point2{make_rat(1, 3), make_rat(1, 3)});
    CHECK(alpha({1, 2}, {Rat(0), Rat(0)}) == Point2{make_rat(1, 3), make_rat(2, 3)});
    CHECK(alpha({0, 0}, {make_rat(1, 2), Rat(1)}) == Point2{make_rat(1, 6), make_rat(1, 3)});
    CHECK(alpha({0, 1}, {make_rat(1, 2), Rat(0)}) == Point2{make_rat(1, 6), make_rat(1, 3)});
}

TEST_CASE("eval folds alpha over the word") {
    // level 0: inclusion
    Address a0 = normalize(Variant::M, {}, boundary_point(make_rat(1, 3), Rat(0)));
    CHECK(eval(a0) == Point2{make_rat(1, 3), Rat(0)});
    // single digit
    Address a1 = normalize(Variant::M, {{0, 1}}, boundary_point(Rat(1), Rat(1)));
    CHECK(eval(a1) == Point2{make_rat(1, 3), make_rat(2, 3)});
}

TEST_CASE("normalize picks the least representative") {
    Address a = normalize(Variant::M, {{1, 0}}, boundary_point(Rat(0), make_rat(1, 2)));
    CHECK(a.word == std::vector<CellIndex>{{0, 0}});
    CHECK(a.tip == boundary_point(Rat(1), make_rat(1, 2)));

    // interior tip: unchanged
    Address b = normalize(Variant::M, {{2, 1}}, boundary_point(Rat(1), make_rat(1, 3)));
    CHECK(b.word == std::vector<CellIndex>{{2, 1}});
    CHECK(b.tip == boundary_point(Rat(1), make_rat(1, 3)));

    // corner shared by three kept cells: all raw forms agree
    Address c1 = normalize(Variant::M, {{0, 0}}, boundary_point(Rat(1), Rat(1)));
    Address c2 = normalize(Variant::M, {{1, 0}}, boundary_point(Rat(0), Rat(1)));
    Address c3 = normalize(Variant::M, {{0, 1}}, boundary_point(Rat(1), Rat(0)));
    CHECK(c1 == c2);
    CHECK(c2 == c3);
    CHECK(c1.word == std::vector<CellIndex>{{0, 0}});
}

TEST_CASE("normalize is idempotent and eval-invariant at small levels") {
    for (Variant v : {Variant::M, Variant::N}) {
        auto segs = glue_segments(v);
        for (int level = 1; level <= 3; ++level) {
            for (const auto& s : segs) {
                for (Rat r : {Rat(0), make_rat(1, 9), make_rat(1, 3), make_rat(5, 9),
                              make_rat(2, 3), Rat(1)}) {
                    auto [a, b] = segment_points(s, r);
                    std::vector<CellIndex> wa{a.first}, wb{b.first};
                    // pad to the target level with inner digits
                    for (int t = 1; t < level; ++t) {
                        wa.push_back({0, 0});
                        wb.push_back({0, 0});
                    }
                    Address na = normalize(v, wa, a.second);
                    Address nb = normalize(v, wb, b.second);
                    REQUIRE(normalize(na) == na);
                    REQUIRE(eval(na) == eval_word(wa, to_point(a.second)));
                    if (level == 1) REQUIRE(na == nb);  // single-level glued pair
                }
            }
        }
    }
}

TEST_CASE("normalize canonicalizes inner digits too") {
    // tip on the left edge of the inner (1,0) cell slides to the (0,0) cell
    Address a = normalize(Variant::M, {{0, 0}, {1, 0}}, boundary_point(Rat(0), make_rat(1, 3)));
    CHECK(a.word == std::vector<CellIndex>{{0, 0}, {0, 0}});
    CHECK(a.tip == boundary_point(Rat(1), make_rat(1, 3)));
    CHECK(eval(a) == Point2{make_rat(1, 9), make_rat(1, 27)});

    // outer corner shared across level-1 cells wins over any inner choice
    Address b = normalize(Variant::M, {{1, 0}, {0, 0}}, boundary_point(Rat(0), Rat(0)));
    CHECK(b.word == std::vector<CellIndex>{{0, 0}, {2, 0}});
    CHECK(b.tip == boundary_point(Rat(1), Rat(0)));
}

TEST_CASE("normalize rejects bad input") {
    CHECK_THROWS_AS(normalize(Variant::M, {{1, 1}}, boundary_point(Rat(0), Rat(0))), input_error);
    CHECK_THROWS_AS(normalize(Variant::M, {{3, 0}}, boundary_point(Rat(0), Rat(0))), input_error);
    // non-ternary tips are fine for addresses (only distance queries refuse them)
    CHECK_NOTHROW(normalize(Variant::M, {}, boundary_point(make_rat(1, 2), Rat(0))));
}

TEST_CASE("point_address rejects hole points and off-grid points") {
    // the open center square meets no grid line at level 1, either variant
    CHECK_THROWS_AS(point_address(Variant::M, {make_rat(1, 2), make_rat(1, 2)}, 1), input_error);
    CHECK_THROWS_AS(point_address(Variant::N, {make_rat(1, 2), make_rat(1, 2)}, 1), input_error);
    // on the level-2 grid inside the hole: N decomposes it, M cannot
    Point2 hole{make_rat(4, 9), make_rat(1, 2)};
    CHECK_THROWS_AS(point_address(Variant::M, hole, 2), input_error);
    Address n = point_address(Variant::N, hole, 2);
    CHECK(n.word == std::vector<CellIndex>{{1, 1}, {0, 1}});
    CHECK(eval(n) == hole);
    // interior point on no grid line at level 1
    CHECK_THROWS_AS(point_address(Variant::N, {make_rat(1, 9), make_rat(1, 9)}, 1), input_error);
}

TEST_CASE("address text format round trips") {
    Address a = parse_address("M:(0,1)(2,0)@(1/3,0)");
    CHECK(a.variant == Variant::M);
    CHECK(a.level() == 2);
    CHECK(parse_address(format_address(a)) == a);

    Address b = parse_address("N:@(0,1)");
    CHECK(b.level() == 0);
    CHECK(parse_address(format_address(b)) == b);

    CHECK_THROWS_AS(parse_address("M:(1,1)@(0,0)"), parse_error);
    CHECK_THROWS_AS(parse_address("X:@(0,0)"), parse_error);
    CHECK_THROWS_AS(parse_address("M:(0,1)@(2,0)"), parse_error);   // tip off the square
    CHECK_THROWS_AS(parse_address("M:(0,1)@(1/3,1/3)"), parse_error);  // tip off the boundary
    CHECK_THROWS_AS(parse_address("M:(0,1)"), parse_error);
    CHECK_THROWS_AS(parse_address("M:(0,1)@(0,0)x"), parse_error);
    CHECK_NOTHROW(parse_address("M:(0,1)@(1/2,0)"));  // non-ternary tips are addressable
}
