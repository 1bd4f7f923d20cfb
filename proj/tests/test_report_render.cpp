#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "porolab/corpus.hpp"
#include "porolab/render.hpp"
#include "porolab/report.hpp"
#include "porolab/suites.hpp"
#include "porolab/errors.hpp"

#include <fstream>
#include <sstream>

using namespace porolab;
using namespace porolab::testing;

TEST_CASE("reports validate against the published schema") {
    for (const char* name : {"F1", "F2", "F3", "geo_half", "F5", "fin"}) {
        for (const SetSpec& spec : corpus_specs()) {
            if (spec.name != name) continue;
            auto rep = analyze_set(spec, 16);
            std::string why;
            INFO(name);
            INFO(why);
            CHECK(validate_report(rep, &why));
        }
    }
}

TEST_CASE("tampered reports fail validation") {
    auto rep = analyze_set(parse_spec("set G { shape = points(geometric(r=1/2)) }"), 12);
    std::string why;
    REQUIRE(validate_report(rep, &why));

    auto broken = rep;
    broken["porosity"]["p_plus_upper"] = "0.5";  // not a p/q string
    CHECK(!validate_report(broken, &why));
    CHECK(why.find("pattern") != std::string::npos);

    broken = rep;
    broken["csp"].erase("status");
    CHECK(!validate_report(broken, &why));

    broken = rep;
    broken["unexpected"] = 1;
    CHECK(!validate_report(broken, &why));

    broken = rep;
    broken["csp"]["status"] = "Maybe";
    CHECK(!validate_report(broken, &why));
}

TEST_CASE("analyze_set is byte-deterministic") {
    auto spec = parse_spec("set F2 { shape = thicken(power(alpha=2, x0=1/2), q=3) }");
    std::string a = analyze_set(spec, 16).dump(2);
    std::string b = analyze_set(spec, 16).dump(2);
    CHECK(a == b);
}

TEST_CASE("the shipped schema file matches the embedded text") {
    std::ifstream in(std::string(POROLAB_SRC) + "/report.schema.json", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(os.str() == report_schema_text() + "\n");
}

TEST_CASE("text format carries the headline facts") {
    auto rep = analyze_set(parse_spec("set G { shape = points(geometric(r=1/2)) }"), 16);
    std::string text = report_to_text(rep);
    CHECK(text.find("p+: [1/2, 1/2] exact") != std::string::npos);
    CHECK(text.find("CSP_Refuted") != std::string::npos);
}

TEST_CASE("SVG render is deterministic and annotated with exact ratios") {
    AnySet e = make("set F3 { shape = bands(power(alpha=2, x0=1/2)) }");
    std::string a = render_svg(e, 6, "F3");
    std::string b = render_svg(e, 6, "F3");
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("<ellipse") != std::string::npos);     // bubbles
    CHECK(a.find("<rect") != std::string::npos);        // liquid
    CHECK(a.find(">16<") != std::string::npos);         // first band gap ratio x_3/x_4 = 16
}

TEST_CASE("ASCII render sketches liquid and bubbles") {
    AnySet e = make("set G { shape = points(geometric(r=1/2)) }");
    std::string s = render_ascii(e, 10);
    CHECK(s.find('#') != std::string::npos);
    CHECK(s.find('.') != std::string::npos);
    CHECK(s.find("bubble ratios b/a: 2 2 2") != std::string::npos);
    CHECK(render_ascii(e, 10) == s);
}

TEST_CASE("finite sets render too") {
    AnySet e = make("set X { shape = blocks([1/4,1/2; 1,2;]) }");
    std::string svg = render_svg(e, 8, "X");
    CHECK(svg.find("<rect") != std::string::npos);
}

TEST_CASE("unknown verify suites fail with the list of known ones") {
    try {
        run_suite("nosuch", 8);
        FAIL("should have thrown");
    } catch (const AnalysisError& e) {
        std::string msg = e.what();
        CHECK(msg.find("available:") != std::string::npos);
        CHECK(msg.find("thm219") != std::string::npos);
        CHECK(msg.find("oracle") != std::string::npos);
    }
}
