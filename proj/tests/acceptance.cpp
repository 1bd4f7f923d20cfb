// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Builds everything from the bundled corpus and drives the CLI
// binary for the format/determinism/exit-code contracts.

#include "porolab/corpus.hpp"
#include "porolab/csp.hpp"
#include "porolab/dsl.hpp"
#include "porolab/gapseq.hpp"
#include "porolab/oracle.hpp"
#include "porolab/porosity.hpp"
#include "porolab/report.hpp"
#include "porolab/render.hpp"
#include "porolab/suites.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace porolab;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& what, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

GermSet corpus_germ(const std::string& name) {
    for (const SetSpec& spec : corpus_specs()) {
        if (spec.name == name) return std::get<GermSet>(elaborate(spec));
    }
    throw AnalysisError("corpus set not found: " + name);
}

const std::size_t kDepth = 64;

}  // namespace

int main() {
    const std::string bin = POROLAB_BIN;
    const std::string src = POROLAB_SRC;

    criterion(1, "F1 (squared iterates) is certified CSP with a universal gap stream and M = 1",
              [&](std::string& d) {
                  GermSet e = corpus_germ("F1");
                  CspCertificate cert = csp_certify(e, kDepth);
                  if (cert.status != CspCertificate::Status::Certified) {
                      d = "status " + to_string(cert.status);
                      return false;
                  }
                  auto all = GapSequence::all_gaps(e, kDepth);
                  TailVerdict ie = is_IE_member(e, all, kDepth);
                  if (ie.status != VerdictStatus::CertifiedTrue) {
                      d = "full gap sequence not certified in I~_F1";
                      return false;
                  }
                  UniversalityReport uni = universality_certificate(e, kDepth);
                  if (uni.verdict.status != VerdictStatus::CertifiedTrue ||
                      !uni.universal_sequence) {
                      d = "universality not certified";
                      return false;
                  }
                  if (!(uni.M_value == ExtRat::finite(Rat(1))) || !uni.M_verdict.certified()) {
                      d = "M = " + uni.M_value.str();
                      return false;
                  }
                  d = "q = " + cert.q->str() + ", M = 1";
                  return true;
              });

    criterion(2, "F2 (thicken q=3) certified CSP; m0 found; independent inclusion re-check clean",
              [&](std::string& d) {
                  GermSet e = corpus_germ("F2");
                  // elaboration placed m0 = 2 and merged the leading overlap
                  if (!(e.block(1) == Block{Rat(1, 4), Rat(3, 2)})) {
                      d = "merged head block wrong";
                      return false;
                  }
                  CspCertificate cert = csp_certify(e, kDepth);
                  if (cert.status != CspCertificate::Status::Certified) {
                      d = "status " + to_string(cert.status);
                      return false;
                  }
                  if (!(*cert.q >= Rat(3))) {
                      d = "q = " + cert.q->str() + " < 3";
                      return false;
                  }
                  std::string why;
                  if (!recheck_certificate(e, cert, kDepth, &why)) {
                      d = "re-check violation: " + why;
                      return false;
                  }
                  if (!recheck_centers_in_set(e, cert, &why)) {
                      d = "center-inclusion half failed: " + why;
                      return false;
                  }
                  d = "q = " + cert.q->str() + ", zero violations to the depth-" +
                      std::to_string(kDepth) + " window";
                  return true;
              });

    criterion(3, "F3 (bands) has a certified universal element with M = inf and is CSP-refuted",
              [&](std::string& d) {
                  GermSet e = corpus_germ("F3");
                  UniversalityReport uni = universality_certificate(e, kDepth);
                  if (uni.verdict.status != VerdictStatus::CertifiedTrue ||
                      !uni.universal_sequence) {
                      d = "universality not certified";
                      return false;
                  }
                  // the universal sequence is the stream {(x_{2n}, x_{2n-1})}
                  Gap g1 = uni.universal_sequence->entry(1);
                  if (!(g1 == Gap{Rat::pow2(-8), Rat(1, 16)})) {
                      d = "unexpected first universal entry";
                      return false;
                  }
                  if (!uni.M_value.infinite || !uni.M_verdict.certified()) {
                      d = "M not certified infinite";
                      return false;
                  }
                  CspCertificate cert = csp_certify(e, kDepth);
                  if (cert.status != CspCertificate::Status::Refuted) {
                      d = "status " + to_string(cert.status);
                      return false;
                  }
                  return true;
              });

    criterion(4, "geometric(1/2): p+ = 1/2 exactly, I~_E empty, CSP refuted",
              [&](std::string& d) {
                  GermSet e = corpus_germ("geo_half");
                  PorosityValue p = porosity_at_zero(e, kDepth);
                  if (!p.exact || !(p.lower == Rat(1, 2)) || !(p.upper == Rat(1, 2))) {
                      d = "p+ = [" + p.lower.str() + "," + p.upper.str() + "]";
                      return false;
                  }
                  if (p.is_strongly_porous.status != VerdictStatus::CertifiedFalse) {
                      d = "strong porosity verdict not certified false";
                      return false;
                  }
                  TailVerdict ie = is_IE_member(e, GapSequence::all_gaps(e, kDepth), kDepth);
                  if (ie.status != VerdictStatus::CertifiedFalse) {
                      d = "I~_E emptiness not certified";
                      return false;
                  }
                  CspCertificate cert = csp_certify(e, kDepth);
                  if (cert.status != CspCertificate::Status::Refuted) {
                      d = "status " + to_string(cert.status);
                      return false;
                  }
                  return true;
              });

    criterion(5, "F5 (recurring-band table): p+ = 1 certified, universality certified false, refuted",
              [&](std::string& d) {
                  GermSet e = corpus_germ("F5");
                  PorosityValue p = porosity_at_zero(e, kDepth);
                  if (!p.exact || !(p.upper == Rat(1)) ||
                      p.is_strongly_porous.status != VerdictStatus::CertifiedTrue) {
                      d = "p+ not certified 1";
                      return false;
                  }
                  UniversalityReport uni = universality_certificate(e, kDepth);
                  if (uni.verdict.status != VerdictStatus::CertifiedFalse) {
                      d = "universality verdict " + to_string(uni.verdict.status);
                      return false;
                  }
                  CspCertificate cert = csp_certify(e, kDepth);
                  if (cert.status != CspCertificate::Status::Refuted) {
                      d = "status " + to_string(cert.status);
                      return false;
                  }
                  return true;
              });

    criterion(6, "three-way equivalence (matching / universal+finite M / uniform) over the corpus",
              [&](std::string& d) {
                  if (corpus_specs().size() < 21) {  // >= 20 germ sets plus the finite control
                      d = "corpus too small";
                      return false;
                  }
                  SuiteResult res = run_suite("thm219", kDepth);
                  d = std::to_string(res.passed) + " certified instances agree, " +
                      std::to_string(res.failed) + " disagree";
                  return res.failed == 0 && res.passed >= 20;
              });

    criterion(7, "constant identity: C(tau~) at tau = m_{n+1} equals M(L~) on certified-CSP sets",
              [&](std::string& d) {
                  SuiteResult res = run_suite("lemma215", kDepth);
                  d = std::to_string(res.passed) + " identities, " + std::to_string(res.failed) +
                      " mismatches";
                  return res.failed == 0 && res.passed >= 8;
              });

    criterion(8, "oracle equivalence on corpus truncations to 32 blocks, >= 200 (set,h) pairs",
              [&](std::string& d) {
                  SuiteResult res = run_suite("oracle", 32);
                  std::size_t pairs = 0;
                  for (const std::string& line : res.lines) {
                      auto pos = line.find("pairs compared: ");
                      if (pos != std::string::npos)
                          pairs = std::stoul(line.substr(pos + 16));
                  }
                  d = std::to_string(pairs) + " pairs, " + std::to_string(res.failed) +
                      " disagreements";
                  return res.failed == 0 && pairs >= 200;
              });

    criterion(9, "strictify is strictly decreasing, equivalent to its input, and M-preserving",
              [&](std::string& d) {
                  std::size_t checked = 0;
                  for (const SetSpec& spec : corpus_specs()) {
                      AnySet any = elaborate(spec);
                      if (!std::holds_alternative<GermSet>(any)) continue;
                      const GermSet& e = std::get<GermSet>(any);
                      std::size_t depth = std::min<std::size_t>(kDepth, 24);
                      if (e.usable_depth(depth + 1) < 6) continue;
                      auto all = GapSequence::all_gaps(e, depth);
                      auto s = strictify(all);
                      for (std::size_t k = 1; k + 1 <= s.size(); ++k) {
                          if (!(s.entry(k + 1).a < s.entry(k).a)) {
                              d = spec.name + ": not strictly decreasing";
                              return false;
                          }
                      }
                      if (!equiv(s, all, depth).holds()) {
                          d = spec.name + ": not equivalent to its input";
                          return false;
                      }
                      auto [m1, v1] = M_of(all, depth);
                      auto [m2, v2] = M_of(s, depth);
                      if (v1.certified() && v2.certified() && !(m1 == m2)) {
                          d = spec.name + ": M changed " + m1.str() + " -> " + m2.str();
                          return false;
                      }
                      ++checked;
                  }
                  // duplicate-entry window: strictification must drop the copy
                  GermSet e = corpus_germ("F1");
                  auto g1 = e.gap(1);
                  auto dup = GapSequence::explicit_entries(e, {g1, g1, e.gap(2)}, 8);
                  if (strictify(dup).size() != 2) {
                      d = "duplicate entry survived";
                      return false;
                  }
                  d = std::to_string(checked) + " corpus sets checked";
                  return checked >= 20;
              });

    criterion(10, "determinism and format: byte-identical reports, schema-valid, stable render",
              [&](std::string& d) {
                  std::string corpus_path = src + "/tests/data/corpus.germ";
                  std::string cmd = bin + " analyze " + corpus_path + " --depth 24 --format json";
                  RunResult a = run(cmd);
                  RunResult b = run(cmd);
                  if (a.exit_code != 0 || a.out.empty()) {
                      d = "analyze failed (exit " + std::to_string(a.exit_code) + ")";
                      return false;
                  }
                  if (a.out != b.out) {
                      d = "analyze output not byte-identical";
                      return false;
                  }
                  SuiteResult schema = run_suite("schema", 24);
                  if (!schema.ok()) {
                      d = "schema validation failures";
                      return false;
                  }
                  RunResult r1 = run(bin + " render " + src + "/examples_dsl/f3.germ --depth 8");
                  RunResult r2 = run(bin + " render " + src + "/examples_dsl/f3.germ --depth 8");
                  if (r1.exit_code != 0 || r1.out != r2.out ||
                      r1.out.find("<svg") == std::string::npos) {
                      d = "render not byte-stable";
                      return false;
                  }
                  // exit-code contract
                  RunResult broken = run(bin + " analyze " + src + "/tests/data/broken.germ");
                  if (broken.exit_code != 2) {
                      d = "parse error exit " + std::to_string(broken.exit_code) + " != 2";
                      return false;
                  }
                  RunResult nosuite = run(bin + " verify --suite nosuch");
                  if (nosuite.exit_code == 0) {
                      d = "unknown suite must fail";
                      return false;
                  }
                  RunResult badm0 = run(bin + " analyze " + src + "/tests/data/no_m0.germ");
                  if (badm0.exit_code != 3) {
                      d = "elaboration error exit " + std::to_string(badm0.exit_code) + " != 3";
                      return false;
                  }
                  RunResult cert = run(bin + " certify " + src + "/examples_dsl/f2.germ");
                  if (cert.exit_code != 0 ||
                      cert.out.find("\"status\": \"CSP_Certified\"") == std::string::npos) {
                      d = "certify contract";
                      return false;
                  }
                  RunResult envdep =
                      run("POROLAB_DEPTH=16 " + bin + " analyze " + src + "/examples_dsl/geo.germ");
                  if (envdep.exit_code != 0 ||
                      envdep.out.find("\"requested\": 16") == std::string::npos) {
                      d = "POROLAB_DEPTH override ignored";
                      return false;
                  }
                  return true;
              });

    std::cout << (g_failures == 0 ? "acceptance: all criteria passed\n"
                                  : "acceptance: " + std::to_string(g_failures) +
                                        " criterion(s) failed\n");
    return g_failures == 0 ? 0 : 1;
}
