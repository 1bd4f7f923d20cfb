#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "porolab/csp.hpp"
#include "porolab/errors.hpp"
#include "porolab/oracle.hpp"

using namespace porolab;
using namespace porolab::testing;

TEST_CASE("dyadic witness: F1 picks every iterate once") {
    GermSet e = f1();
    TestSequence u = TestSequence::dyadic_witness(e, 4);
    REQUIRE(u.size() == 4);
    CHECK(u.value(1) == q(1, 2));
    CHECK(u.value(2) == q(1, 4));
    CHECK(u.value(3) == q(1, 16));
    CHECK(u.value(4) == q(1, 256));
}

TEST_CASE("dyadic witness: geometric fills every shell") {
    TestSequence u = TestSequence::dyadic_witness(geo_half(), 6);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(u.value(n) == Rat::pow2(-static_cast<long>(n)));
}

TEST_CASE("dyadic witness: thickened blocks give endpoints or shell-max points") {
    GermSet e = f2();  // blocks [1/4, 3/2], [1/16, 3/16], ...
    TestSequence u = TestSequence::dyadic_witness(e, 5);
    CHECK(u.value(1) == q(3, 2));   // [1, inf) shell: top endpoint
    CHECK(u.value(2) == q(1, 2));   // [1/2, 1) covered by [1/4, 3/2]: shell bottom
    CHECK(u.value(3) == q(1, 4));   // [1/4, 1/2): left endpoint
    CHECK(u.value(4) == q(3, 16));  // [1/8, 1/4): right endpoint 3*x_2
    for (std::size_t n = 1; n <= u.size(); ++n) CHECK(*e.contains(u.value(n)) == true);
}

TEST_CASE("test sequences reject non-members (hard error)") {
    GermSet e = f1();
    CHECK_THROWS_AS(TestSequence::user_supplied(e, {q(1, 3)}), AnalysisError);
    CHECK_NOTHROW(TestSequence::user_supplied(e, {q(1, 2), q(1, 16)}));
}

TEST_CASE("check_asymp_gap: identity and divergence cases") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 12);
    // tau = the left endpoints themselves: c1 = c2 = 1
    std::vector<Rat> lefts;
    for (std::size_t n = 1; n <= all.size(); ++n) lefts.push_back(all.entry(n).a);
    TestSequence tau = TestSequence::user_supplied(e, lefts);
    EquivVerdict eq = check_asymp_gap(e, tau, all, 12);
    CHECK(eq.c1 == Rat(1));
    CHECK(eq.c2 == Rat(1));
    CHECK(eq.verdict.holds());

    // F3 with tau at the band bottoms vs the band gaps: a_n/tau_n -> inf
    GermSet e3 = f3();
    auto all3 = GapSequence::all_gaps(e3, 8);
    TestSequence tau3 = TestSequence::block_left_endpoints(e3, 8).subsampled(1);
    EquivVerdict eq3 = check_asymp_gap(e3, tau3, all3, 8);
    CHECK(!eq3.verdict.holds());
}

TEST_CASE("tau-strong porosity: F1 is matched for the whole canonical family") {
    GermSet e = f1();
    for (const TestSequence& tau : canonical_tau_family(e, 14)) {
        auto res = tau_strongly_porous(e, tau, 14);
        CAPTURE(tau.label());
        CHECK(res.verdict.status == VerdictStatus::CertifiedTrue);
        REQUIRE(res.matched);
        // the matched sequence consists of components and rides the slots
        CHECK(res.matched->size() >= 2);
    }
}

TEST_CASE("tau-strong porosity: F3 refuted with diverging matched ratios") {
    GermSet e = f3();
    TestSequence tau = TestSequence::block_left_endpoints(e, 8);
    auto res = tau_strongly_porous(e, tau, 8);
    CHECK(res.verdict.status == VerdictStatus::CertifiedFalse);
    CHECK(res.c_value == ExtRat::inf());
    // matched ratio a_n/tau_n = x_{2n}/x_{2n+1} on the window
    REQUIRE(res.matched);
    REQUIRE(res.ratio_tail_max);
    CHECK(*res.ratio_tail_max > Rat(1000));
}

TEST_CASE("tau-strong porosity: geometric control refuted via p+ for any tau") {
    GermSet e = geo_half();
    TestSequence tau = TestSequence::dyadic_witness(e, 12);
    auto res = tau_strongly_porous(e, tau, 12);
    CHECK(res.verdict.status == VerdictStatus::CertifiedFalse);
    CHECK(res.verdict.note.find("I~_E is empty") != std::string::npos);
}

TEST_CASE("slot cover: slots are pairwise disjoint and catch every test point") {
    GermSet e = f2();
    UniversalityReport uni = universality_certificate(e, 12);
    REQUIRE(uni.universal_sequence);
    const GapSequence& cover = *uni.universal_sequence;
    // [m_{k+1}, l_k] disjoint: l_{k+1} < m_{k+1}
    for (std::size_t k = 1; k + 1 <= cover.size(); ++k)
        CHECK(cover.entry(k + 1).a < cover.entry(k + 1).b);
    TestSequence tau = TestSequence::dyadic_witness(e, 12);
    auto res = tau_strongly_porous(e, tau, 12, &uni);
    REQUIRE(res.slots.k.size() >= 4);
    for (std::size_t i = 1; i <= res.slots.k.size(); ++i) {
        std::size_t k = res.slots.k[i - 1];
        if (k == 0) {
            CHECK(tau.value(i) >= cover.entry(1).b);
        } else {
            CHECK(tau.value(i) <= cover.entry(k).a);
            CHECK(tau.value(i) >= cover.entry(k + 1).b);
        }
    }
}

TEST_CASE("matching uniqueness: two sequences matched to one tau agree eventually") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 12);
    std::vector<Rat> lefts;
    for (std::size_t n = 1; n <= all.size(); ++n) lefts.push_back(all.entry(n).a);
    TestSequence tau = TestSequence::user_supplied(e, lefts);

    // same tails, different finite prefixes
    std::vector<Gap> e1, e2;
    e1.push_back(all.entry(2));
    e2.push_back(all.entry(1));
    for (std::size_t n = 2; n <= all.size(); ++n) {
        e1.push_back(all.entry(n));
        e2.push_back(all.entry(n));
    }
    auto a1 = GapSequence::explicit_entries(e, e1, 13);
    auto a2 = GapSequence::explicit_entries(e, e2, 13);
    CHECK(check_asymp_gap(e, tau, a1, 12).verdict.holds());
    CHECK(check_asymp_gap(e, tau, a2, 12).verdict.holds());
    std::size_t n0 = 2;
    for (std::size_t n = n0; n <= a1.size(); ++n) CHECK(a1.entry(n) == a2.entry(n));
}

TEST_CASE("a matched member of I~_E has almost decreasing endpoints") {
    GermSet e = f1();
    auto all = GapSequence::all_gaps(e, 12);
    std::vector<Gap> copy;
    for (std::size_t n = 1; n <= all.size(); ++n) copy.push_back(all.entry(n));
    auto ex = GapSequence::explicit_entries(e, copy, 13);
    CHECK(ex.almost_decreasing().holds());
    // b_n almost decreasing too: check exactly on the window
    for (std::size_t n = 1; n + 1 <= ex.size(); ++n)
        CHECK(ex.entry(n + 1).b <= ex.entry(n).b);
}

TEST_CASE("kK_condition: F1 nests scaled windows, k=2, K=100") {
    GermSet e = f1();
    TestSequence tau = TestSequence::block_left_endpoints(e, 12);
    std::size_t n1 = 0;
    TailVerdict v = kK_condition(e, tau, q(2), q(100), 12, &n1);
    CHECK(v.status == VerdictStatus::CertifiedTrue);
    CHECK(n1 >= 1);
    // and the window really is clean from n1 on
    CHECK(n1 <= tau.size());
}

TEST_CASE("kK_condition: geometric window always hits the next point") {
    GermSet e = geo_half();
    // tau_n = 2^-n: (3/2 tau_n, 3 tau_n) contains 2^-n+1
    TestSequence user = TestSequence::user_supplied(e, {q(1, 2), q(1, 4), q(1, 8), q(1, 16)});
    TailVerdict v1 = kK_condition(e, user, q(3, 2), q(3), 12);
    CHECK(v1.status == VerdictStatus::EmpiricalFalse);  // finite user window: empirical only
    // the same tau as a canonical construction upgrades to certified
    TestSequence canon = TestSequence::block_left_endpoints(e, 12);
    TailVerdict v2 = kK_condition(e, canon, q(3, 2), q(3), 12);
    CHECK(v2.status == VerdictStatus::CertifiedFalse);
}

TEST_CASE("kK_condition: K <= k is a precondition violation") {
    GermSet e = f1();
    TestSequence tau = TestSequence::block_left_endpoints(e, 8);
    CHECK_THROWS_AS(kK_condition(e, tau, q(3), q(2), 8), AnalysisError);
    CHECK_THROWS_AS(kK_condition(e, tau, q(3), q(3), 8), AnalysisError);
}

TEST_CASE("scaled-window agreement: matching iff some k works for every K in the grid") {
    // sets with fast-growing gap ratios, so N1(K) falls inside a modest window
    for (const char* def : {"set A { shape = points(power(alpha=2, x0=1/2)) }",
                            "set D { shape = thicken(power(alpha=2, x0=1/2), q=3) }",
                            "set C { shape = points(geometric(r=1/2)) }"}) {
        GermSet e = germ(def);
        TestSequence tau = TestSequence::block_left_endpoints(e, 12);
        auto por = tau_strongly_porous(e, tau, 12);
        bool some_k_works = false;
        for (const Rat& k : {q(2), q(4), q(7)}) {
            bool all_K = true;
            for (const Rat& mult : {q(2), q(10), q(100)}) {
                if (!kK_condition(e, tau, k, k * mult, 12).holds()) all_K = false;
            }
            if (all_K) some_k_works = true;
        }
        INFO(def);
        CHECK(por.verdict.holds() == some_k_works);
    }
}

TEST_CASE("kK_condition: slowly diverging sets stay honestly empirical-false") {
    // factorial gaps need n > K before (k tau_n, K tau_n) clears x_{n-1} = n tau_n,
    // so a 12-deep window sees violations throughout; the verdict must not
    // overclaim in either direction
    GermSet e = germ("set B { shape = points(factorial(scale=1)) }");
    TestSequence tau = TestSequence::block_left_endpoints(e, 12);
    TailVerdict v = kK_condition(e, tau, q(2), q(40), 12);
    CHECK(v.status == VerdictStatus::EmpiricalFalse);
    // with a window deeper than K the clean tail appears
    TestSequence tau64 = TestSequence::block_left_endpoints(e, 64);
    TailVerdict v64 = kK_condition(e, tau64, q(2), q(40), 64);
    CHECK(v64.holds());
    std::size_t n1 = 0;
    kK_condition(e, tau64, q(2), q(40), 64, &n1);
    CHECK(n1 >= 38);  // the last violation sits near n = K
    CHECK(n1 <= 42);
}

TEST_CASE("C(tau~): worked values") {
    GermSet e1 = f1();
    auto [c1, v1] = C_of_tau(e1, TestSequence::block_left_endpoints(e1, 14), 14);
    CHECK(c1 == ExtRat::finite(Rat(1)));
    CHECK(v1.certified());

    GermSet e2 = f2();
    UniversalityReport uni2 = universality_certificate(e2, 14);
    TestSequence m_next = TestSequence::gap_right_endpoints(e2, *uni2.universal_sequence, 14);
    auto [c2, v2] = C_of_tau(e2, m_next, 14, &uni2);
    CHECK(c2 == ExtRat::finite(Rat(3)));  // realizes C = M = q
    CHECK(v2.certified());

    GermSet e3 = f3();
    auto [c3, v3] = C_of_tau(e3, TestSequence::block_left_endpoints(e3, 8), 8);
    CHECK(c3 == ExtRat::inf());
    CHECK(v3.certified());
}

TEST_CASE("C_E: worked values realize the universal consecutive-ratio limit") {
    auto [ce1, cv1] = C_E(f1(), 14);
    CHECK(ce1 == ExtRat::finite(Rat(1)));
    CHECK(cv1.certified());

    auto [ce2, cv2] = C_E(f2(), 14);
    CHECK(ce2 == ExtRat::finite(Rat(3)));
    CHECK(cv2.certified());

    auto [ce3, cv3] = C_E(f3(), 8);
    CHECK(ce3 == ExtRat::inf());
    CHECK(cv3.certified());
}

TEST_CASE("uniform strong porosity") {
    ExtRat c;
    TailVerdict v1 = uniform_strong_porosity(f1(), 14, &c);
    CHECK(v1.status == VerdictStatus::CertifiedTrue);
    CHECK(c == ExtRat::finite(Rat(1)));

    TailVerdict v3 = uniform_strong_porosity(f3(), 8);
    CHECK(v3.status == VerdictStatus::CertifiedFalse);

    FiniteSet fin({Block{q(1), q(2)}}, true);
    CHECK(uniform_strong_porosity(fin).status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("csp_certify: F2 certified with q >= 3 and a passing re-check") {
    GermSet e = f2();
    CspCertificate cert = csp_certify(e, 16);
    CHECK(cert.status == CspCertificate::Status::Certified);
    REQUIRE(cert.q);
    CHECK(*cert.q >= Rat(3));
    REQUIRE(cert.t);
    CHECK(cert.M == ExtRat::finite(Rat(3)));
    CHECK(cert.centers_vanish.status == VerdictStatus::CertifiedTrue);
    std::string why;
    CHECK(recheck_certificate(e, cert, 16, &why));
    CHECK(recheck_centers_in_set(e, cert, &why));  // centers form a point set inside E
}

TEST_CASE("csp_certify: refutations name their mechanism") {
    CspCertificate c3 = csp_certify(f3(), 8);
    CHECK(c3.status == CspCertificate::Status::Refuted);
    CHECK(c3.M == ExtRat::inf());
    CHECK(c3.mechanism.find("M(L~) = inf") != std::string::npos);

    CspCertificate c5 = csp_certify(f5(), 40);
    CHECK(c5.status == CspCertificate::Status::Refuted);
    CHECK(c5.mechanism.find("no universal element") != std::string::npos);

    CspCertificate cg = csp_certify(geo_half(), 24);
    CHECK(cg.status == CspCertificate::Status::Refuted);
    REQUIRE(cg.p_plus);
    CHECK(*cg.p_plus == q(1, 2));
}

TEST_CASE("csp_certify: finite sets are trivially CSP") {
    FiniteSet fin({Block{q(1), q(2)}}, false);
    CspCertificate c = csp_certify(fin);
    CHECK(c.status == CspCertificate::Status::TriviallyCsp);
    CHECK(c.verdict.status == VerdictStatus::CertifiedTrue);
}

TEST_CASE("csp_certify: tampered certificates fail the independent re-check") {
    GermSet e = f2();
    CspCertificate cert = csp_certify(e, 16);
    REQUIRE(cert.status == CspCertificate::Status::Certified);
    CspCertificate bad = cert;
    bad.q = Rat(101, 100);  // too tight to cover the thickened blocks
    std::string why;
    CHECK(!recheck_certificate(e, bad, 16, &why));
    CHECK(!why.empty());
}

TEST_CASE("greedy clustering: thickened blocks cluster one block each") {
    GermSet e = f2();
    Clustering cl = greedy_clusters(e, 16);
    REQUIRE(cl.clusters.size() >= 8);
    // the head region merges across its genuinely small gaps; once the gap
    // ratios take off every completed cluster is a single [x, 3x] block
    for (std::size_t i = cl.clusters.size() / 2; i + 1 < cl.clusters.size(); ++i)
        CHECK(cl.clusters[i].diameter == Rat(3));
    CHECK(cl.q_estimate == Rat(6));
}

TEST_CASE("greedy clustering: interleaved small gaps merge into runs") {
    GermSet e = germ("set R { shape = ratio_gaps(interleave[pow[16]; cycle[2]], cycle[1], seed=1) }");
    Clustering cl = greedy_clusters(e, 20);
    REQUIRE(cl.clusters.size() >= 4);
    // after stabilization every completed cluster is a pair with diameter 2
    const auto& mid = cl.clusters[cl.clusters.size() / 2];
    CHECK(mid.diameter == Rat(2));
    CHECK(cl.q_estimate == Rat(4));
}

TEST_CASE("h_set_witness: F1 gives h = tau with unit constants") {
    GermSet e = f1();
    // tau_n = x_{n+1}: block left endpoints shifted into the slot bottoms
    TestSequence tau = TestSequence::block_left_endpoints(e, 12).subsampled(1);
    HWitness h = h_set_witness(e, tau, 12);
    REQUIRE(h.h.size() >= 4);
    CHECK(h.equiv_tau.verdict.holds());
    CHECK(h.ratio_to_porosity.holds());
    // lambda(E,0,x_{n+1})/x_{n+1} = 1 - x_{n+2}/x_{n+1} on the window
    CHECK(h.lambda_ratio.front() < Rat(1));
    CHECK(h.lambda_ratio.back() > q(1023, 1024));
    // h_n = m_{k(n)+1} <= tau_n with constants in (0, 1]
    CHECK(h.equiv_tau.c2 <= Rat(1));
    CHECK(h.equiv_tau.c1.positive());
}

TEST_CASE("h_set_witness: non-CSP input is a precondition error") {
    GermSet e = f3();
    TestSequence tau = TestSequence::block_left_endpoints(e, 8);
    CHECK_THROWS_AS(h_set_witness(e, tau, 8), AnalysisError);
}

TEST_CASE("gap_from_h: F1 recovers the components below each h_n") {
    GermSet e = f1();
    TestSequence tau = TestSequence::block_left_endpoints(e, 12);
    HWitness h = h_set_witness(e, tau, 12);
    GapFromH g = gap_from_h(e, tau, h, 12);
    REQUIRE(g.gaps.size() >= 3);
    CHECK(g.tau_equiv_b.verdict.holds());
    // every recovered entry is a genuine component (checked at construction)
    for (std::size_t n = 1; n <= g.gaps.size(); ++n)
        CHECK(g.gaps.entry(n).a < g.gaps.entry(n).b);
}

TEST_CASE("gap_from_h: rejects unverified preconditions") {
    GermSet e = f1();
    TestSequence tau = TestSequence::block_left_endpoints(e, 10);
    HWitness h = h_set_witness(e, tau, 10);
    h.equiv_tau.verdict = TailVerdict::inconclusive(0, "wiped");
    CHECK_THROWS_AS(gap_from_h(e, tau, h, 10), AnalysisError);
}

TEST_CASE("oracle agreement: slot choices match brute_match at B = 2C") {
    GermSet e = f1();
    std::size_t depth = 10;
    Truncation t = truncate(e, depth + 1);
    UniversalityReport uni = universality_certificate(e, depth);
    TestSequence tau = TestSequence::block_left_endpoints(e, depth);
    auto res = tau_strongly_porous(e, tau, depth, &uni);
    REQUIRE(res.verdict.holds());
    REQUIRE(res.c_verdict.certified());
    Rat bound = Rat(2) * res.c_value.value;

    // the oracle has no head-slot concept: compare the judged entries only
    std::vector<Rat> vals;
    std::vector<std::size_t> expected;
    for (std::size_t i = 1; i <= res.slots.k.size(); ++i) {
        if (res.slots.k[i - 1] == 0) continue;
        vals.push_back(tau.value(i));
        expected.push_back(res.slots.k[i - 1]);
    }
    auto match = brute_match(t, vals, bound);
    REQUIRE(match);
    REQUIRE(match->size() == expected.size());
    for (std::size_t i = 0; i < match->size(); ++i) CHECK((*match)[i] == expected[i]);
}
