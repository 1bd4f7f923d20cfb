#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "porolab/errors.hpp"
#include "porolab/gapseq.hpp"

using namespace porolab;
using namespace porolab::testing;

TEST_CASE("gap sequences verify component maximality exactly") {
    GermSet e = f1();
    // (1/4, 1/2) is the first component; (1/5, 1/2) is not maximal on the left
    CHECK_NOTHROW(GapSequence::explicit_entries(e, {Gap{q(1, 4), q(1, 2)}}, 16));
    CHECK_THROWS_AS(GapSequence::explicit_entries(e, {Gap{q(1, 5), q(1, 2)}}, 16),
                    AnalysisError);
    CHECK_THROWS_AS(GapSequence::explicit_entries(e, {Gap{q(1, 4), q(1, 3)}}, 16),
                    AnalysisError);
}

TEST_CASE("I~_E membership: the running examples") {
    // F1 with S = {(x_{n+1}, x_n)}: member, certified
    GermSet e1 = f1();
    auto s1 = GapSequence::all_gaps(e1, 16);
    CHECK(is_IE_member(e1, s1, 16).status == VerdictStatus::CertifiedTrue);

    // geometric(1/2): b_n/a_n = 2 bounded, certified non-member
    GermSet g = geo_half();
    auto sg = GapSequence::all_gaps(g, 32);
    CHECK(is_IE_member(g, sg, 32).status == VerdictStatus::CertifiedFalse);

    // F3 with S = {(x_{2n}, x_{2n-1})}: member, certified
    GermSet e3 = f3();
    auto s3 = GapSequence::all_gaps(e3, 8);
    CHECK(is_IE_member(e3, s3, 8).status == VerdictStatus::CertifiedTrue);

    // F5: the full stream keeps ratio-2 gaps forever: certified non-member
    GermSet e5 = f5();
    auto s5 = GapSequence::all_gaps(e5, 40);
    CHECK(is_IE_member(e5, s5, 40).status == VerdictStatus::CertifiedFalse);
}

TEST_CASE("precedes: subsequence embeds into the full sequence with f(n) = 2n") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 16);
    auto evens = GapSequence::arithmetic(e, 2, 2, 16);
    auto r = precedes(evens, all, 16);
    REQUIRE(r.embedding);
    CHECK(r.verdict.status == VerdictStatus::CertifiedTrue);
    CHECK(r.embedding->N1 == 1);
    for (std::size_t i = 0; i < r.embedding->f.size(); ++i)
        CHECK(r.embedding->f[i] == 2 * (i + 1));
}

TEST_CASE("precedes: reflexivity (identity embedding)") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 16);
    auto r = precedes(all, all, 16);
    REQUIRE(r.embedding);
    CHECK(r.embedding->N1 == 1);
    CHECK(r.verdict.holds());
    for (std::size_t i = 0; i < r.embedding->f.size(); ++i) CHECK(r.embedding->f[i] == i + 1);
}

TEST_CASE("precedes: the full sequence does not embed into every 2nd gap") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 16);
    auto evens = GapSequence::arithmetic(e, 2, 2, 16);
    auto r = precedes(all, evens, 16);
    CHECK(!r.embedding);
    CHECK(!r.verdict.holds());
    CHECK(*r.verdict.witness_index == 1);  // a_1 is already absent
}

TEST_CASE("precedes is transitive on subsequence chains") {
    GermSet e = f1();
    auto every4 = GapSequence::arithmetic(e, 4, 4, 16);
    auto every2 = GapSequence::arithmetic(e, 2, 2, 16);
    auto all = GapSequence::all_gaps(e, 16);
    CHECK(precedes(every4, every2, 16).verdict.holds());
    CHECK(precedes(every2, all, 16).verdict.holds());
    CHECK(precedes(every4, all, 16).verdict.holds());  // composition exists
}

TEST_CASE("equiv: tails coinciding after an index shift") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 16);
    CHECK(equiv(all, all, 16).holds());

    auto shifted = GapSequence::arithmetic(e, 2, 1, 16);  // drop one leading term
    CHECK(equiv(shifted, all, 16).holds());

    auto evens = GapSequence::arithmetic(e, 2, 2, 16);
    CHECK(!equiv(evens, all, 16).holds());  // all does not embed into evens
}

TEST_CASE("strictify: duplicate removal is the minimal case") {
    GermSet e = f1();
    Gap g1 = e.gap(1), g2 = e.gap(2);
    auto dup = GapSequence::explicit_entries(e, {g1, g1, g2}, 16);
    auto strict = strictify(dup);
    REQUIRE(strict.size() == 2);
    CHECK(strict.entry(1) == g1);
    CHECK(strict.entry(2) == g2);
    CHECK(strict.almost_strictly_decreasing().holds());
    // the input re-indexes into its strictification
    CHECK(precedes(dup, strict, 16).verdict.holds());
}

TEST_CASE("strictify: already-strict streams are fixed points") {
    for (GermSet e : {f1(), f3()}) {
        auto all = GapSequence::all_gaps(e, 8);
        auto s = strictify(all);
        REQUIRE(s.size() == all.size());
        for (std::size_t k = 1; k <= s.size(); ++k) CHECK(s.entry(k) == all.entry(k));
        CHECK(s.descriptor().kind == GapSeqDescriptor::Kind::All);
    }
}

TEST_CASE("M_of: point sets give exactly 1") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 16);
    auto [m, v] = M_of(all, 16);
    CHECK(m == ExtRat::finite(Rat(1)));
    CHECK(v.status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("M_of: thickened sets give exactly q") {
    GermSet e = f2();
    auto all = GapSequence::all_gaps(e, 16);
    auto [m, v] = M_of(all, 16);
    CHECK(m == ExtRat::finite(Rat(3)));
    CHECK(v.status == VerdictStatus::CertifiedTrue);
    // window values realize the limit: l_n/m_{n+1} = 3 beyond the merged head
    CHECK(all.entry(2).a / all.entry(3).b == Rat(3));
}

TEST_CASE("M_of: bands diverge") {
    GermSet e = f3();
    auto all = GapSequence::all_gaps(e, 8);
    auto [m, v] = M_of(all, 8);
    CHECK(m == ExtRat::inf());
    CHECK(v.status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("M_of on explicit windows is an empirical statistic") {
    GermSet e = f2();
    auto all = GapSequence::all_gaps(e, 10);
    std::vector<Gap> ent;
    for (std::size_t k = 1; k <= all.size(); ++k) ent.push_back(all.entry(k));
    auto ex = GapSequence::explicit_entries(e, ent, 10);
    auto [m, v] = M_of(ex, 10);
    CHECK(!v.certified());
    CHECK(!m.infinite);
    CHECK(m.value == Rat(3));  // the window statistic still lands on q
}

TEST_CASE("universality: F1 certified with the full stream shortcut") {
    GermSet e = f1();
    auto rep = universality_certificate(e, 16);
    CHECK(rep.verdict.status == VerdictStatus::CertifiedTrue);
    REQUIRE(rep.universal_sequence);
    CHECK(rep.universal_sequence->descriptor().kind == GapSeqDescriptor::Kind::All);
    CHECK(rep.M_value == ExtRat::finite(Rat(1)));
    CHECK(rep.M_verdict.status == VerdictStatus::CertifiedTrue);
    REQUIRE(rep.c);
    // every member of a generated I~_E^d family precedes the universal sequence
    for (std::size_t step : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
        auto sub = GapSequence::arithmetic(e, step, step, 16);
        CHECK(precedes(sub, *rep.universal_sequence, 16).verdict.holds());
    }
    // t-schedule entries genuinely bound the window
    for (const auto& [K, t] : rep.t_schedule) {
        for (std::size_t k = 1; k <= rep.universal_sequence->size(); ++k) {
            const Gap& g = rep.universal_sequence->entry(k);
            if (g.a < t && g.ratio() > *rep.c) CHECK(g.ratio() > K);
        }
    }
}

TEST_CASE("universality: geometric control refuted via p+ < 1") {
    auto rep = universality_certificate(geo_half(), 32);
    CHECK(rep.verdict.status == VerdictStatus::CertifiedFalse);
    CHECK(rep.mechanism.find("p+") != std::string::npos);
}

TEST_CASE("universality: F5 refuted by the recurring power band") {
    auto rep = universality_certificate(f5(), 40);
    CHECK(rep.verdict.status == VerdictStatus::CertifiedFalse);
    CHECK(rep.mechanism.find("recurs") != std::string::npos);
}

TEST_CASE("universality: interleaved growth certifies with c above the recurring set") {
    GermSet e = germ("set R { shape = ratio_gaps(interleave[pow[16]; cycle[2]], cycle[1], seed=1) }");
    auto rep = universality_certificate(e, 40);
    CHECK(rep.verdict.status == VerdictStatus::CertifiedTrue);
    REQUIRE(rep.c);
    CHECK(*rep.c >= Rat(2));
    REQUIRE(rep.universal_sequence);
    CHECK(rep.universal_sequence->descriptor().kind == GapSeqDescriptor::Kind::Filtered);
    CHECK(rep.M_value == ExtRat::finite(Rat(2)));
    CHECK(rep.M_verdict.status == VerdictStatus::CertifiedTrue);
    // the universal sequence is in I~_E^sd and a member of I~_E
    CHECK(rep.universal_sequence->almost_strictly_decreasing().holds());
    CHECK(is_IE_member(e, *rep.universal_sequence, 40).status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("universality report records per-candidate partitions") {
    auto rep = universality_certificate(f5(), 30);
    CHECK(!rep.per_c.empty());
    for (const auto& st : rep.per_c) CHECK(st.below + st.above == rep.depth_used);
}

TEST_CASE("optional property: equiv on strictly decreasing windows is a tail shift") {
    GermSet e = f1();
    auto a = GapSequence::arithmetic(e, 3, 1, 16);
    auto l = GapSequence::all_gaps(e, 16);
    // equivalent: a is l with two leading entries dropped
    CHECK(equiv(a, l, 16).holds());
    // and indeed the windows coincide after index shifts N1 = 0, N2 = 2
    for (std::size_t n = 1; n + 2 <= l.size() && n <= a.size(); ++n)
        CHECK(a.entry(n) == l.entry(n + 2));
}
