#include "porolab/suites.hpp"

#include "porolab/corpus.hpp"
#include "porolab/csp.hpp"
#include "porolab/dsl.hpp"
#include "porolab/errors.hpp"
#include "porolab/gapseq.hpp"
#include "porolab/oracle.hpp"
#include "porolab/report.hpp"

#include <algorithm>
#include <sstream>

namespace porolab {

namespace {

struct Leg {
    bool certified = false;
    bool value = false;
};

// leg 1: tau-strongly porous for every canonical tau.
Leg leg_matching(const GermSet& e, std::size_t depth, const UniversalityReport& uni) {
    Leg leg;
    bool all_true = true, any_false = false, all_certified = true;
    for (const TestSequence& tau : canonical_tau_family(e, depth, &uni)) {
        auto res = tau_strongly_porous(e, tau, depth, &uni);
        if (!res.verdict.certified()) all_certified = false;
        if (res.verdict.status == VerdictStatus::CertifiedFalse) any_false = true;
        if (!res.verdict.holds()) all_true = false;
    }
    leg.certified = all_certified || any_false;  // one certified refutation decides
    leg.value = all_true && !any_false;
    return leg;
}

// leg 2: a universal element exists and M(L~) < inf.
Leg leg_universal(const UniversalityReport& uni) {
    Leg leg;
    if (uni.verdict.status == VerdictStatus::CertifiedFalse) {
        leg.certified = true;
        leg.value = false;
    } else if (uni.verdict.status == VerdictStatus::CertifiedTrue && uni.M_verdict.certified()) {
        leg.certified = true;
        leg.value = !uni.M_value.infinite;
    }
    return leg;
}

// leg 3: uniformly strongly porous, i.e. C_E < inf.
Leg leg_uniform(const GermSet& e, std::size_t depth) {
    Leg leg;
    TailVerdict v = uniform_strong_porosity(e, depth);
    leg.certified = v.certified();
    leg.value = v.holds();
    return leg;
}

SuiteResult suite_thm219(std::size_t depth) {
    SuiteResult out;
    out.name = "thm219";
    for (const SetSpec& spec : corpus_specs()) {
        AnySet any = elaborate(spec);
        if (!std::holds_alternative<GermSet>(any)) {
            out.lines.push_back(spec.name + ": finite set, trivially CSP — skipped");
            ++out.skipped;
            continue;
        }
        const GermSet& e = std::get<GermSet>(any);
        UniversalityReport uni = universality_certificate(e, depth);
        Leg l1 = leg_matching(e, depth, uni);
        Leg l2 = leg_universal(uni);
        Leg l3 = leg_uniform(e, depth);
        std::ostringstream line;
        line << spec.name << ": matching=" << (l1.value ? "T" : "F")
             << (l1.certified ? "" : "?") << " universal+M=" << (l2.value ? "T" : "F")
             << (l2.certified ? "" : "?") << " uniform=" << (l3.value ? "T" : "F")
             << (l3.certified ? "" : "?");
        if (!(l1.certified && l2.certified && l3.certified)) {
            line << " — uncertified instance, skipped";
            out.lines.push_back(line.str());
            ++out.skipped;
            continue;
        }
        if (l1.value == l2.value && l2.value == l3.value) {
            line << " — agree";
            ++out.passed;
        } else {
            line << " — DISAGREE";
            ++out.failed;
        }
        out.lines.push_back(line.str());
    }
    return out;
}

SuiteResult suite_oracle(std::size_t depth) {
    SuiteResult out;
    out.name = "oracle";
    std::size_t pairs = 0;
    for (const SetSpec& spec : corpus_specs()) {
        AnySet any = elaborate(spec);
        if (!std::holds_alternative<GermSet>(any)) {
            out.lines.push_back(spec.name + ": finite — skipped");
            ++out.skipped;
            continue;
        }
        const GermSet& e = std::get<GermSet>(any);
        std::size_t want = std::min<std::size_t>(depth, 32);
        std::size_t usable = e.usable_depth(want);
        if (usable < 3) {
            out.lines.push_back(spec.name + ": window too small — skipped");
            ++out.skipped;
            continue;
        }
        Truncation t = truncate(e, usable);
        std::size_t agreed = 0, checked = 0;
        bool bad = false;
        for (std::size_t n = 1; n <= t.gap_count(); ++n) {
            for (const Rat& h : {t.gap(n).a, t.gap(n).b, (t.gap(n).a + t.gap(n).b) / Rat(2)}) {
                if (!(h > t.floor)) continue;
                Rat expected;
                try {
                    expected = brute_lambda(t, h);
                } catch (const AnalysisError&) {
                    continue;  // the oracle refused; nothing to compare
                }
                ++checked;
                auto got = lambda_gap(e, h, depth * 4 + 64);
                if (got.exact && got.value == expected) ++agreed;
                else bad = true;
            }
        }
        bool prof_ok = true;
        try {
            PorosityProfile prof = porosity_profile(e, usable - 1);
            prof_ok = prof.window_max == brute_profile_sup(t);
        } catch (const AnalysisError&) {
            prof_ok = true;  // profile sweep fully refused at this depth
        }
        pairs += checked;
        std::ostringstream line;
        line << spec.name << ": lambda agreement " << agreed << "/" << checked
             << ", profile max " << (prof_ok ? "agrees" : "DISAGREES");
        if (!bad && prof_ok) ++out.passed;
        else ++out.failed;
        out.lines.push_back(line.str());
    }
    out.lines.push_back("total (set,h) pairs compared: " + std::to_string(pairs));
    return out;
}

SuiteResult suite_preorder(std::size_t depth) {
    SuiteResult out;
    out.name = "preorder";
    for (const SetSpec& spec : corpus_specs()) {
        AnySet any = elaborate(spec);
        if (!std::holds_alternative<GermSet>(any)) {
            ++out.skipped;
            continue;
        }
        const GermSet& e = std::get<GermSet>(any);
        std::size_t d = std::min<std::size_t>(depth, 24);
        if (e.usable_depth(d + 1) < 8) {
            ++out.skipped;
            out.lines.push_back(spec.name + ": window too small — skipped");
            continue;
        }
        auto all = GapSequence::all_gaps(e, d);
        auto every2 = GapSequence::arithmetic(e, 2, 2, d);
        auto every4 = GapSequence::arithmetic(e, 4, 4, d);
        bool reflexive = precedes(all, all, d).verdict.holds() &&
                         precedes(every2, every2, d).verdict.holds();
        bool chain = precedes(every4, every2, d).verdict.holds() &&
                     precedes(every2, all, d).verdict.holds() &&
                     precedes(every4, all, d).verdict.holds();
        auto strict = strictify(all);
        bool strict_ok = strict.almost_strictly_decreasing().holds() &&
                         equiv(strict, all, d).holds();
        if (reflexive && chain && strict_ok) ++out.passed;
        else ++out.failed;
        out.lines.push_back(spec.name + ": reflexive=" + (reflexive ? "ok" : "FAIL") +
                            " transitive-chain=" + (chain ? "ok" : "FAIL") +
                            " strictify=" + (strict_ok ? "ok" : "FAIL"));
    }
    return out;
}

SuiteResult suite_lemma215(std::size_t depth) {
    SuiteResult out;
    out.name = "lemma215";
    for (const SetSpec& spec : corpus_specs()) {
        AnySet any = elaborate(spec);
        if (!std::holds_alternative<GermSet>(any)) {
            ++out.skipped;
            continue;
        }
        const GermSet& e = std::get<GermSet>(any);
        CspCertificate cert = csp_certify(e, depth);
        if (cert.status != CspCertificate::Status::Certified) {
            out.lines.push_back(spec.name + ": not certified CSP — skipped");
            ++out.skipped;
            continue;
        }
        UniversalityReport uni = universality_certificate(e, depth);
        TestSequence tau = TestSequence::gap_right_endpoints(e, *uni.universal_sequence, depth);
        auto [c, cv] = C_of_tau(e, tau, depth, &uni);
        bool equal = cv.certified() && c == uni.M_value;
        if (equal) ++out.passed;
        else ++out.failed;
        out.lines.push_back(spec.name + ": C(tau~)=" + c.str() + " M(L~)=" + uni.M_value.str() +
                            (equal ? " — equal" : " — MISMATCH"));
    }
    return out;
}

SuiteResult suite_schema(std::size_t depth) {
    SuiteResult out;
    out.name = "schema";
    for (const SetSpec& spec : corpus_specs()) {
        auto rep = analyze_set(spec, depth);
        std::string why;
        if (validate_report(rep, &why)) {
            ++out.passed;
            out.lines.push_back(spec.name + ": valid");
        } else {
            ++out.failed;
            out.lines.push_back(spec.name + ": INVALID (" + why + ")");
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"thm219", "oracle", "preorder", "lemma215", "schema"};
}

SuiteResult run_suite(const std::string& name, std::size_t depth) {
    if (name == "thm219") return suite_thm219(depth);
    if (name == "oracle") return suite_oracle(depth);
    if (name == "preorder") return suite_preorder(depth);
    if (name == "lemma215") return suite_lemma215(depth);
    if (name == "schema") return suite_schema(depth);
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw AnalysisError("unknown suite '" + name + "'; available: " + known);
}

}  // namespace porolab
