#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "porolab/dsl.hpp"
#include "porolab/errors.hpp"

using namespace porolab;
using namespace porolab::testing;

TEST_CASE("grammar productions parse") {
    auto s1 = parse_spec("set F1 { shape = points(power(alpha=2, x0=1/2)) }");
    CHECK(s1.name == "F1");
    CHECK(std::holds_alternative<SetSpec::Points>(s1.shape));

    auto s2 = parse_spec("set F2 { shape = thicken(power(alpha=2, x0=1/2), q=3) }");
    CHECK(std::holds_alternative<SetSpec::Thicken>(s2.shape));
    CHECK(std::get<SetSpec::Thicken>(s2.shape).q == Rat(3));

    auto s3 = parse_spec("set B { shape = bands(factorial(scale=1)), depth = 32, origin = out }");
    CHECK(std::holds_alternative<SetSpec::Bands>(s3.shape));
    CHECK(s3.default_depth == 32);
    CHECK(!s3.origin_in_set);

    auto s4 = parse_spec("set X { shape = blocks([1/4,1/2; 1,2;]) }");
    CHECK(std::get<SetSpec::ExplicitBlocks>(s4.shape).blocks.size() == 2);

    auto s5 = parse_spec("set R { shape = ratio_gaps(diagpow[2], cycle[1], seed=1) }");
    CHECK(std::holds_alternative<SetSpec::RatioGaps>(s5.shape));
}

TEST_CASE("comments and whitespace are free") {
    auto s = parse_spec(R"(# a germ set
set W {          # points of a geometric law
  shape = points(geometric(r=1/2))
}
)");
    CHECK(s.name == "W");
}

TEST_CASE("semantic error: geometric ratio outside (0,1)") {
    CHECK_THROWS_WITH_AS(parse_spec("set BAD { shape = points(geometric(r=3/2)) }"),
                         doctest::Contains("ratio must lie in (0,1)"), ParseError);
    CHECK_THROWS_AS(parse_spec("set BAD { shape = points(geometric(r=1)) }"), ParseError);
}

TEST_CASE("semantic errors carry positions") {
    try {
        parse_spec("set A {\n  shape = points(geometric(r=7/2))\n}");
        FAIL("should have thrown");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() > 1);
    }
}

TEST_CASE("syntax errors") {
    CHECK_THROWS_AS(parse_spec("set { shape = points(geometric(r=1/2)) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = points(geometric(r=1/2)) "), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = circles(geometric(r=1/2)) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { depth = 8 }"), ParseError);  // no shape
    CHECK_THROWS_AS(parse_spec(""), ParseError);                     // not exactly one
}

TEST_CASE("further semantic gates") {
    CHECK_THROWS_AS(parse_spec("set A { shape = thicken(geometric(r=1/2), q=1) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = points(power(alpha=1, x0=1/2)) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = points(power(alpha=2, x0=2)) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = points(ratio_table(cycle[3/2])) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = ratio_gaps(cycle[1], cycle[1], seed=1) }"),
                    ParseError);  // gap ratios must exceed 1
    CHECK_THROWS_AS(parse_spec("set A { shape = ratio_gaps(cycle[2], cycle[1/2], seed=1) }"),
                    ParseError);  // block ratios must be >= 1
    CHECK_THROWS_AS(parse_spec("set A { shape = blocks([2,1;]) }"), ParseError);
}

TEST_CASE("ratio map forms") {
    auto open_list = parse_spec("set A { shape = points(ratio_table(list[1/2, 1/3, ...])) }");
    const auto& law = std::get<SetSpec::Points>(open_list.shape).law;
    const auto& tab = std::get<DecayLaw::Table>(law.node());
    CHECK(std::get<RatioMap::ListPrefix>(tab.rho.node()).open_ended);

    CHECK_NOTHROW(parse_spec("set A { shape = points(ratio_table(interleave[cycle[1/2]; pow[1/3]])) }"));
    CHECK_THROWS_AS(parse_spec("set A { shape = points(ratio_table(pow[1/2, 1/3])) }"), ParseError);
    CHECK_THROWS_AS(parse_spec("set A { shape = points(ratio_table(cycle[])) }"), ParseError);
}

TEST_CASE("parse . print is the identity on SetSpec") {
    const char* sources[] = {
        "set F1 { shape = points(power(alpha=2, x0=1/2)) }",
        "set F2 { shape = thicken(power(alpha=2, x0=1/2), q=3), depth = 48 }",
        "set F3 { shape = bands(power(alpha=2, x0=1/2)), origin = out }",
        "set G { shape = points(geometric(r=2/3)) }",
        "set T { shape = points(ratio_table(list[1/2, 1/5, ...])) }",
        "set C { shape = points(ratio_table(cycle[1/2, 1/3])) }",
        "set R { shape = ratio_gaps(interleave[pow[16]; cycle[2]], cycle[1], seed=3/2) }",
        "set X { shape = blocks([1/4,1/2; 1,2;]) }",
        "set FF { shape = points(factorial(scale=7/5)), depth = 96 }",
    };
    for (const char* src : sources) {
        CAPTURE(src);
        SetSpec once = parse_spec(src);
        std::string printed = print_spec(once);
        SetSpec twice = parse_spec(printed);
        CHECK(once == twice);
        CHECK(print_spec(twice) == printed);  // printer is a fixed point
    }
}

TEST_CASE("multiple sets per file") {
    auto all = parse_specs(
        "set A { shape = points(geometric(r=1/2)) }\n"
        "set B { shape = points(geometric(r=1/3)) }\n");
    CHECK(all.size() == 2);
    CHECK(all[0].name == "A");
    CHECK(all[1].name == "B");
}
