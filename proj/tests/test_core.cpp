#include "carpet/point2.hpp"
#include "carpet/rat.hpp"
#include "carpet/rng.hpp"
#include "carpet/ternary.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace carpet;

TEST_CASE("rationals normalize and stay exact") {
    CHECK(make_rat(2, 6) == make_rat(1, 3));
    CHECK(make_rat(-3, -9) == make_rat(1, 3));
    CHECK(make_rat(-1, 3) < 0);
    CHECK(rat_str(make_rat(4, 6)) == "2/3");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK_THROWS_AS(make_rat(1, 0), input_error);
    CHECK(parse_rat("22/7") == make_rat(22, 7));
    CHECK(parse_rat("-3") == Rat(-3));
    CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rat("x"), parse_error);
    CHECK_THROWS_AS(parse_rat(""), parse_error);
}

TEST_CASE("ternary rational recognition") {
    CHECK(is_ternary_rational(make_rat(5, 27)));
    CHECK(is_ternary_rational(Rat(0)));
    CHECK(is_ternary_rational(Rat(1)));
    CHECK(!is_ternary_rational(make_rat(1, 2)));
    CHECK(!is_ternary_rational(make_rat(1, 6)));
    CHECK(ternary_exponent(make_rat(5, 27)) == 3);
    CHECK(ternary_exponent(Rat(1)) == 0);
    CHECK_THROWS_AS(ternary_exponent(make_rat(1, 2)), input_error);
}

TEST_CASE("taxicab distances") {
    Point2 o{Rat(0), Rat(0)}, c{Rat(1), Rat(1)};
    CHECK(taxicab(o, c) == 2);
    CHECK(taxicab(c, c) == 0);
    CHECK(taxicab({make_rat(1, 3), Rat(0)}, {make_rat(2, 3), make_rat(4, 9)}) == make_rat(7, 9));
}

TEST_CASE("taxicab/euclid squared-form bilipschitz") {
    Point2 o{Rat(0), Rat(0)}, c{Rat(1), Rat(1)}, e{Rat(1), Rat(0)};
    // (0,0)-(1,1): taxi 2, euclid^2 2: 4 <= 8 and 2 <= 16
    CHECK(taxicab(o, c) * taxicab(o, c) == 4);
    CHECK(euclid_sq(o, c) == 2);
    auto rep = verify_taxi_euclid_bilipschitz({{o, c}, {o, e}, {c, c}});
    for (const auto& r : rep) CHECK(r.pass);
}

TEST_CASE("metric axioms hold on random triples") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        Point2 a{rng.rat_in_unit(81), rng.rat_in_unit(81)};
        Point2 b{rng.rat_in_unit(81), rng.rat_in_unit(81)};
        Point2 c{rng.rat_in_unit(81), rng.rat_in_unit(81)};
        REQUIRE(taxicab(a, b) == taxicab(b, a));
        REQUIRE(taxicab(a, c) <= taxicab(a, b) + taxicab(b, c));
        REQUIRE((taxicab(a, b) == 0) == (a == b));
    }
}

TEST_CASE("ternary expansions of ternary rationals") {
    auto low = to_ternary(make_rat(1, 3), TernaryVariant::low);
    CHECK(low.preperiod == std::vector<int>{1});
    CHECK(low.period == std::vector<int>{0});
    auto high = to_ternary(make_rat(1, 3), TernaryVariant::high);
    CHECK(high.preperiod == std::vector<int>{0});
    CHECK(high.period == std::vector<int>{2});
    auto zero = to_ternary(Rat(0));
    CHECK(zero.preperiod.empty());
    CHECK(zero.period == std::vector<int>{0});
    auto one = to_ternary(Rat(1), TernaryVariant::low);
    CHECK(one.period == std::vector<int>{2});
    CHECK_THROWS_AS(to_ternary(Rat(2)), input_error);
    CHECK_THROWS_AS(to_ternary(Rat(-1)), input_error);
}

TEST_CASE("ternary evaluation closed forms") {
    CHECK(eval_ternary({{1}, {0}}) == make_rat(1, 3));
    CHECK(eval_ternary({{}, {2}}) == 1);
    CHECK(eval_ternary({{0, 2}, {1}}) == make_rat(5, 18));  // 2/9 + (1/9)(1/2)
    CHECK_THROWS_AS(eval_ternary({{1}, {}}), input_error);
}

TEST_CASE("round trip eval o to_ternary over random rationals") {
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t den = 1 + rng.below(4374);
        Rat x = make_rat(Int(rng.below(den + 1)), Int(den));
        REQUIRE(eval_ternary(to_ternary(x, TernaryVariant::low)) == x);
        REQUIRE(eval_ternary(to_ternary(x, TernaryVariant::high)) == x);
    }
}

TEST_CASE("non-ternary rationals have a single expansion") {
    auto a = to_ternary(make_rat(1, 2), TernaryVariant::low);
    auto b = to_ternary(make_rat(1, 2), TernaryVariant::high);
    CHECK(a.preperiod == b.preperiod);
    CHECK(a.period == b.period);
    CHECK(a.preperiod.empty());
    CHECK(a.period == std::vector<int>{1});  // 1/2 = 0.111...
    auto c = to_ternary(make_rat(3, 8));
    CHECK(eval_ternary(c) == make_rat(3, 8));
    CHECK(c.period == std::vector<int>{1, 0});
}

TEST_CASE("splitmix rng is deterministic and rejects zero range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
    CHECK_THROWS_AS(a.below(0), input_error);
}
