#include "porolab/csp.hpp"

#include "porolab/errors.hpp"

#include <algorithm>

namespace porolab {

namespace {

using K = TailClass::Kind;

// Slot of v in the cover: 0 = head [m_1, inf); k in [1, size-1] = [m_{k+1}, l_k].
// nullopt: v lies below the deepest bounded slot of the window.
std::optional<std::size_t> slot_of(const GapSequence& cover, const Rat& v) {
    if (cover.size() < 2) return std::nullopt;
    if (v >= cover.entry(1).b) return 0;
    if (!(cover.entry(1).a >= v)) throw AnalysisError("slot_of: point inside the first gap");
    // largest k with entry(k).a >= v (left endpoints strictly decrease)
    std::size_t lo = 1, hi = cover.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (cover.entry(mid).a >= v) lo = mid;
        else hi = mid - 1;
    }
    if (lo >= cover.size()) return std::nullopt;  // below the deepest bounded slot
    if (!(v >= cover.entry(lo + 1).b))
        throw AnalysisError("slot_of: a test point fell inside a gap (not a point of E)");
    return lo;
}

bool intersects_set(const GermSet& e, const Rat& u, const Rat& w, std::size_t depth) {
    // does E cap (u, w) have a point? walk blocks from the top
    std::size_t usable = e.usable_depth(depth);
    for (std::size_t n = 1; n <= usable; ++n) {
        Block b = e.block(n);
        if (b.hi <= u) return false;  // everything deeper is below u
        if (b.lo < w && b.hi > u) return true;
    }
    return false;
}

Rat tail_max_of(const std::vector<Rat>& vals) {
    Rat m = vals[vals.size() / 2];
    for (std::size_t i = vals.size() / 2; i < vals.size(); ++i)
        if (vals[i] > m) m = vals[i];
    return m;
}

}  // namespace

std::string to_string(TauProvenance p) {
    switch (p) {
        case TauProvenance::DyadicWitness: return "dyadic_witness";
        case TauProvenance::GapEndpoints: return "gap_right_endpoints";
        case TauProvenance::BlockLeftEndpoints: return "block_left_endpoints";
        case TauProvenance::UserSupplied: return "user_supplied";
    }
    return "user_supplied";
}

// ---------------------------------------------------------------------------
// TestSequence

TestSequence::TestSequence(GermSet base, std::vector<Rat> vals, TauProvenance prov)
    : base_(std::move(base)), vals_(std::move(vals)), prov_(prov) {
    if (vals_.empty()) throw AnalysisError("test sequence: empty window");
    std::size_t last_increase = 0;
    for (std::size_t i = 0; i < vals_.size(); ++i) {
        if (!vals_[i].positive()) throw AnalysisError("test sequence: entries must be positive");
        auto in = base_.contains(vals_[i], vals_.size() * 4 + 16);
        if (!in)
            throw AnalysisError("test sequence: tau_" + std::to_string(i + 1) +
                                " is below the representable floor");
        if (!*in)
            throw AnalysisError("test sequence: tau_" + std::to_string(i + 1) + " = " +
                                vals_[i].str() + " is not a point of E");
        if (i > 0 && vals_[i] > vals_[i - 1]) last_increase = i;
    }
    witness_ = last_increase + 1;
}

TestSequence TestSequence::dyadic_witness(const GermSet& e, std::size_t depth) {
    std::vector<Rat> picks;
    std::size_t cap = depth * 16 + 64;
    if (e.usable_depth(1) < 1) throw AnalysisError("dyadic witness: no representable blocks");

    Rat top = e.block(1).hi;
    long j = top >= Rat(1) ? 1 : 1 - top.floor_log2();
    std::size_t n = 1;  // topmost block possibly intersecting the current shell
    while (picks.size() < depth && n <= cap) {
        bool top_shell = j == 1;
        Rat s = top_shell ? Rat(1) : Rat::pow2(1 - j);
        Rat two_s = Rat::pow2(2 - j);
        if (!top_shell) {
            while (n <= cap && e.usable_depth(n) >= n && e.block(n).lo >= two_s) ++n;
        }
        if (n > cap || e.usable_depth(n) < n) break;  // representable window exhausted
        Block b = e.block(n);
        if (b.hi < s) {
            // b (and everything deeper) sits below this shell: every shell down
            // to the one containing b.hi is certainly empty — jump there
            long jb = 1 - b.hi.floor_log2();
            j = jb > j ? jb : j + 1;
            continue;
        }
        // b intersects the shell; it decides the largest point of E here
        bool hi_in = top_shell ? b.hi >= s : (b.hi >= s && b.hi < two_s);
        if (hi_in) picks.push_back(b.hi);
        else if (b.lo >= s && (top_shell || b.lo < two_s)) picks.push_back(b.lo);
        else if (!top_shell && b.lo < s && b.hi >= two_s) picks.push_back(s);  // covered shell
        else throw AnalysisError("dyadic witness: impossible shell case");
        ++j;
    }
    if (picks.empty()) throw AnalysisError("dyadic witness: no shells representable");
    for (std::size_t i = 0; i + 1 < picks.size(); ++i) {
        if (!(picks[i + 1] < picks[i]))
            throw AnalysisError("dyadic witness: representatives must strictly decrease");
    }
    return TestSequence(e, std::move(picks), TauProvenance::DyadicWitness);
}

TestSequence TestSequence::gap_right_endpoints(const GermSet& e, const GapSequence& cover,
                                               std::size_t depth) {
    if (!same_set(e, cover.base()))
        throw AnalysisError("gap_right_endpoints: cover built over another set");
    std::vector<Rat> vals;
    for (std::size_t n = 2; n <= cover.size() && vals.size() < depth; ++n)
        vals.push_back(cover.entry(n).b);  // m_{n+1} for n = 1, 2, ...
    if (vals.empty()) throw AnalysisError("gap_right_endpoints: cover window too short");
    return TestSequence(e, std::move(vals), TauProvenance::GapEndpoints);
}

TestSequence TestSequence::block_left_endpoints(const GermSet& e, std::size_t depth) {
    std::size_t usable = e.usable_depth(depth);
    std::vector<Rat> vals;
    for (std::size_t n = 1; n <= usable; ++n) vals.push_back(e.block(n).lo);
    return TestSequence(e, std::move(vals), TauProvenance::BlockLeftEndpoints);
}

TestSequence TestSequence::user_supplied(const GermSet& e, std::vector<Rat> values) {
    return TestSequence(e, std::move(values), TauProvenance::UserSupplied);
}

TestSequence TestSequence::subsampled(std::size_t step) const {
    if (step == 0) throw AnalysisError("test sequence: bad subsample step");
    TestSequence out = *this;
    if (step == 1) return out;
    std::vector<Rat> vals;
    for (std::size_t i = 0; i < vals_.size(); i += step) vals.push_back(vals_[i]);
    out.vals_ = std::move(vals);
    out.step_ = step_ * step;
    out.witness_ = 1;
    for (std::size_t i = 1; i < out.vals_.size(); ++i)
        if (out.vals_[i] > out.vals_[i - 1]) out.witness_ = i + 1;
    return out;
}

std::string TestSequence::label() const {
    std::string s = to_string(prov_);
    if (step_ > 1) s += "/every_" + std::to_string(step_);
    return s;
}

// ---------------------------------------------------------------------------
// check_asymp_gap

EquivVerdict check_asymp_gap(const GermSet& e, const TestSequence& tau, const GapSequence& a,
                             std::size_t depth) {
    if (!same_set(e, a.base())) throw AnalysisError("check_asymp_gap: mismatched sets");
    std::size_t n = std::min({tau.size(), a.size(), depth});
    if (n == 0) throw AnalysisError("check_asymp_gap: empty window");

    EquivVerdict out;
    std::size_t last_order_violation = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (!(tau.value(i) <= a.entry(i).a)) last_order_violation = i;
    if (last_order_violation == n) {
        out.c1 = out.c2 = Rat(0);
        out.from_index = n;
        out.verdict = TailVerdict::empirical(false, n, "tau_n <= a_n fails at the window end");
        out.verdict.witness_index = last_order_violation;
        return out;
    }
    out.from_index = std::max<std::size_t>(last_order_violation + 1, tau.witness_index());
    if (out.from_index > n) out.from_index = n;

    std::vector<Rat> ratios;  // a_n / tau_n >= 1 on [from, n]
    Rat tmin = tau.value(out.from_index) / a.entry(out.from_index).a, tmax = tmin;
    for (std::size_t i = out.from_index; i <= n; ++i) {
        ratios.push_back(a.entry(i).a / tau.value(i));
        Rat inv = tau.value(i) / a.entry(i).a;
        tmin = std::min(tmin, inv);
        tmax = std::max(tmax, inv);
    }
    out.c1 = tmin;
    out.c2 = tmax;

    // exact identity: tau is the left-endpoint sequence itself
    bool identity = true;
    for (std::size_t i = out.from_index; i <= n && identity; ++i)
        identity = tau.value(i) == a.entry(i).a;
    if (identity) {
        out.verdict = TailVerdict::certified(true, n, "identity",
                                             "tau coincides with the left endpoints");
        return out;
    }
    // slot-bottom pattern: tau_n = m_{n+1} exactly; the ratio is l_n/m_{n+1}
    bool slot_bottom = true;
    for (std::size_t i = out.from_index; i + 1 <= n && slot_bottom; ++i)
        slot_bottom = tau.value(i) == a.entry(i + 1).b;
    if (slot_bottom) {
        auto [m, mv] = M_of(a, depth);
        if (mv.certified()) {
            bool finite = !m.infinite;
            out.verdict = TailVerdict::certified(finite, n, mv.law_tag,
                                                 "a_n/tau_n = l_n/m_{n+1}, M = " + m.str());
            out.verdict.tail_stat = tail_max_of(ratios);
            return out;
        }
    }
    Rat rt = tail_max_of(ratios);
    Rat rh = ratios.front();
    for (std::size_t i = 0; i < ratios.size() / 2; ++i) rh = std::max(rh, ratios[i]);
    bool bounded = !(rt > rh * Rat(2));
    out.verdict = TailVerdict::empirical(bounded, n, "window ratio tail max " + rt.str());
    out.verdict.tail_stat = rt;
    return out;
}

// ---------------------------------------------------------------------------
// tau_strongly_porous

TauPorosityResult tau_strongly_porous(const GermSet& e, const TestSequence& tau,
                                      std::size_t depth, const UniversalityReport* uni) {
    if (!same_set(e, tau.base())) throw AnalysisError("tau_strongly_porous: mismatched sets");
    UniversalityReport local;
    if (!uni) {
        local = universality_certificate(e, depth);
        uni = &local;
    }
    bool cover_is_universal =
        uni->verdict.status == VerdictStatus::CertifiedTrue && uni->universal_sequence;
    GapSequence cover = cover_is_universal ? *uni->universal_sequence
                                           : GapSequence::all_gaps(e, depth);

    TauPorosityResult res;
    res.slots.cover_size = cover.size();

    std::vector<Gap> matched;
    std::vector<Rat> ratios;
    std::vector<std::size_t> judged_tau;  // tau indices that landed in a bounded slot
    for (std::size_t i = 1; i <= tau.size(); ++i) {
        auto k = slot_of(cover, tau.value(i));
        if (!k) break;  // below the window's deepest bounded slot
        res.slots.k.push_back(*k);
        if (*k == 0) continue;  // head slot: finitely many leading entries
        matched.push_back(cover.entry(*k));
        ratios.push_back(cover.entry(*k).a / tau.value(i));
        judged_tau.push_back(i);
    }
    res.slots.judged = matched.size();
    if (!matched.empty()) res.matched = GapSequence::explicit_entries(e, matched, depth + 1);
    if (!ratios.empty()) res.ratio_tail_max = tail_max_of(ratios);

    std::string tag = e.structure_tag();
    PorosityValue p = porosity_at_zero(e, depth);
    if (p.is_strongly_porous.status == VerdictStatus::CertifiedFalse) {
        res.verdict = TailVerdict::certified(false, res.slots.judged, tag,
                                             "p+ = " + p.upper.str() +
                                                 " < 1: I~_E is empty");
        res.c_value = ExtRat::inf();
        res.c_verdict = res.verdict;
        return res;
    }
    if (ratios.size() < 2) {
        res.verdict = TailVerdict::inconclusive(ratios.size(), "window too short");
        res.c_verdict = res.verdict;
        return res;
    }

    TailVerdict cover_ie = is_IE_member(e, cover, depth);
    auto [m, mv] = M_of(cover, depth);

    // does tau sit exactly on the slot bottoms m_{k(n)+1}? (exact window check)
    bool slot_bottom = true;
    for (std::size_t idx = ratios.size() / 2; idx < ratios.size(); ++idx) {
        std::size_t i = judged_tau[idx];
        std::size_t k = res.slots.k[i - 1];
        if (k + 1 > cover.size() || !(tau.value(i) == cover.entry(k + 1).b)) {
            slot_bottom = false;
            break;
        }
    }

    const TailClass& cls = e.gap_ratio_class();
    if (cover_ie.status == VerdictStatus::CertifiedTrue && mv.certified() && !m.infinite) {
        res.verdict = TailVerdict::certified(
            true, res.slots.judged, tag,
            "a_n/tau_n <= l_k/m_{k+1} and M = " + m.value.str() + " is finite");
        res.verdict.tail_stat = res.ratio_tail_max;
    } else if (cover_is_universal && mv.certified() && m.infinite &&
               (slot_bottom || tau.provenance() == TauProvenance::DyadicWitness)) {
        // the slot matching is the unique eventual matching; its
        // ratio rides l_k/m_{k+1} which diverges by the declared structure
        res.verdict = TailVerdict::certified(
            false, res.slots.judged, tag, "matched a_n/tau_n rides l_k/m_{k+1} with M = inf");
        res.verdict.tail_stat = res.ratio_tail_max;
    } else if (cls.certified && cls.kind == K::PowerFamily && cls.base > Rat(1) &&
               tau.provenance() != TauProvenance::UserSupplied) {
        // diagonal structure: runs of the small recurring ratio have unbounded
        // length at arbitrarily small scales, trapping every canonical tau
        res.verdict = TailVerdict::certified(
            false, res.slots.judged, tag,
            "recurring-ratio runs of unbounded length trap the test points (declared diagonal "
            "structure)");
        res.verdict.tail_stat = res.ratio_tail_max;
    } else {
        Rat head = ratios.front();
        for (std::size_t i = 0; i < ratios.size() / 2; ++i) head = std::max(head, ratios[i]);
        bool bounded = !(*res.ratio_tail_max > head * Rat(2));
        res.verdict = TailVerdict::empirical(bounded, res.slots.judged,
                                             "window matching ratio tail max " +
                                                 res.ratio_tail_max->str());
        res.verdict.tail_stat = res.ratio_tail_max;
    }

    // C(tau~) along the matching
    if (res.verdict.status == VerdictStatus::CertifiedTrue && slot_bottom && mv.certified()) {
        res.c_value = m;
        res.c_verdict = TailVerdict::certified(true, res.slots.judged, tag,
                                               "C(tau~) = limsup l_n/m_{n+1} = M(L~)");
    } else if (res.verdict.status == VerdictStatus::CertifiedTrue) {
        bool identity = true;
        for (std::size_t idx = ratios.size() / 2; idx < ratios.size() && identity; ++idx)
            identity = ratios[idx] == Rat(1);
        if (identity) {
            res.c_value = ExtRat::finite(Rat(1));
            res.c_verdict = TailVerdict::certified(
                true, res.slots.judged, tag, "tau coincides with the matched left endpoints");
        } else {
            res.c_value = ExtRat::finite(*res.ratio_tail_max);
            res.c_verdict = TailVerdict::empirical(true, res.slots.judged,
                                                   "window tail statistic along the matching");
        }
    } else if (res.verdict.status == VerdictStatus::CertifiedFalse) {
        res.c_value = ExtRat::inf();
        res.c_verdict = res.verdict;
    } else {
        res.c_value = ExtRat::finite(*res.ratio_tail_max);
        res.c_verdict = TailVerdict::empirical(res.verdict.holds(), res.slots.judged,
                                               "window tail statistic along the matching");
    }
    return res;
}

// ---------------------------------------------------------------------------
// kK_condition

TailVerdict kK_condition(const GermSet& e, const TestSequence& tau, const Rat& k, const Rat& bigK,
                         std::size_t depth, std::size_t* n1_out) {
    if (!(k > Rat(1)) || !(bigK > k)) throw AnalysisError("kK_condition: need K > k > 1");
    std::size_t checked = std::min(tau.size(), depth);
    if (checked == 0) throw AnalysisError("kK_condition: empty window");

    std::size_t last_violation = 0;
    bool tail_all_violate = true;  // every index of the second half hits E
    for (std::size_t n = 1; n <= checked; ++n) {
        Rat v = tau.value(n);
        bool hits = intersects_set(e, k * v, bigK * v, depth * 4 + 16);
        if (hits) last_violation = n;
        else if (n > checked / 2) tail_all_violate = false;
    }
    std::size_t n1 = last_violation + 1;
    if (n1_out) *n1_out = n1;
    std::string tag = e.structure_tag();

    if (n1 > checked) {
        // violated at the window end; certify only for self-similar structure
        const TailClass& g = e.gap_ratio_class();
        const TailClass& d = e.diameter_class();
        bool self_similar = g.certified && g.kind == K::Constant && d.certified &&
                            d.kind == K::Constant &&
                            tau.provenance() != TauProvenance::UserSupplied;
        TailVerdict out =
            (self_similar && tail_all_violate)
                ? TailVerdict::certified(false, checked, tag,
                                         "the scaled window hits E at every tail index of a "
                                         "self-similar structure")
                : TailVerdict::empirical(false, checked, "window violation at index " +
                                                             std::to_string(last_violation));
        out.witness_index = last_violation;
        return out;
    }

    auto por = tau_strongly_porous(e, tau, depth);
    const TailClass& cls = e.gap_ratio_class();
    bool escape = cls.certified && cls.kind == K::EscapeToInfinity;
    if (por.verdict.status == VerdictStatus::CertifiedTrue && escape && por.c_verdict.certified() &&
        !por.c_value.infinite && k > por.c_value.value) {
        TailVerdict out = TailVerdict::certified(
            true, checked, tag,
            "(k tau_n, K tau_n) nests into the matched components: k exceeds C(tau~) and gap "
            "ratios escape");
        out.witness_index = n1;
        return out;
    }
    TailVerdict out =
        TailVerdict::empirical(true, checked, "window clean from N1 = " + std::to_string(n1));
    out.witness_index = n1;
    return out;
}

// ---------------------------------------------------------------------------
// C(tau~), C_E, uniformity

std::pair<ExtRat, TailVerdict> C_of_tau(const GermSet& e, const TestSequence& tau,
                                        std::size_t depth, const UniversalityReport* uni) {
    auto res = tau_strongly_porous(e, tau, depth, uni);
    return {res.c_value, res.c_verdict};
}

std::vector<TestSequence> canonical_tau_family(const GermSet& e, std::size_t depth,
                                               const UniversalityReport* uni) {
    UniversalityReport local;
    if (!uni) {
        local = universality_certificate(e, depth);
        uni = &local;
    }
    GapSequence cover =
        (uni->verdict.status == VerdictStatus::CertifiedTrue && uni->universal_sequence)
            ? *uni->universal_sequence
            : GapSequence::all_gaps(e, depth);
    std::vector<TestSequence> fam;
    fam.push_back(TestSequence::dyadic_witness(e, depth));
    fam.push_back(TestSequence::gap_right_endpoints(e, cover, depth));
    fam.push_back(TestSequence::block_left_endpoints(e, depth));
    fam.push_back(fam[0].subsampled(2));
    fam.push_back(fam[2].subsampled(2));
    return fam;
}

std::pair<ExtRat, TailVerdict> C_E(const GermSet& e, std::size_t depth) {
    UniversalityReport uni = universality_certificate(e, depth);
    std::string tag = e.structure_tag();

    PorosityValue p = porosity_at_zero(e, depth);
    if (p.is_strongly_porous.status == VerdictStatus::CertifiedFalse) {
        return {ExtRat::inf(),
                TailVerdict::certified(
                    true, depth, tag,
                    "p+ < 1: I~_E(tau~) is empty for every tau~, so C(tau~) = inf")};
    }
    if (uni.verdict.status == VerdictStatus::CertifiedTrue && uni.M_verdict.certified()) {
        if (uni.M_value.infinite) {
            return {ExtRat::inf(), TailVerdict::certified(true, uni.depth_used, tag,
                                                          "M(L~) = inf = C_E")};
        }
        return {uni.M_value,
                TailVerdict::certified(true, uni.depth_used, tag,
                                       "C_E = M(L~) via the universal sequence")};
    }
    if (uni.verdict.status == VerdictStatus::CertifiedFalse) {
        // no universal element means not uniformly strongly porous
        return {ExtRat::inf(),
                TailVerdict::certified(true, uni.depth_used, tag,
                                       "no universal element exists: C_E = inf")};
    }
    // empirical lower bound over the canonical family
    ExtRat best = ExtRat::finite(Rat(0));
    for (const TestSequence& tau : canonical_tau_family(e, depth, &uni)) {
        auto [c, v] = C_of_tau(e, tau, depth, &uni);
        if (best < c) best = c;
    }
    return {best, TailVerdict::empirical(true, depth,
                                         "max of C(tau~) over the canonical family: a lower "
                                         "bound only")};
}

TailVerdict uniform_strong_porosity(const GermSet& e, std::size_t depth, ExtRat* c_out) {
    auto [c, v] = C_E(e, depth);
    if (c_out) *c_out = c;
    if (v.certified()) {
        TailVerdict out =
            TailVerdict::certified(!c.infinite, v.depth, v.law_tag, "C_E = " + c.str());
        if (!c.infinite) out.tail_stat = c.value;
        return out;
    }
    return TailVerdict::empirical(!c.infinite, v.depth, "C_E >= " + c.str() + " (window)");
}

TailVerdict uniform_strong_porosity(const FiniteSet& e) {
    return TailVerdict::certified(true, e.blocks().size(), "finite",
                                  "E~_0^d is empty: uniformly strongly porous vacuously");
}

// ---------------------------------------------------------------------------
// clustering

Clustering greedy_clusters(const GermSet& e, std::size_t depth) {
    Clustering out;
    std::size_t usable = e.usable_depth(depth);
    if (usable < 2) return out;

    // the running q estimate tracks the recent completed clusters only:
    // pre-stabilization heads would otherwise poison the threshold forever
    std::vector<Rat> recent;
    auto running_max = [&recent]() {
        Rat m(1);
        std::size_t from = recent.size() > 8 ? recent.size() - 8 : 0;
        for (std::size_t i = from; i < recent.size(); ++i)
            if (recent[i] > m) m = recent[i];
        return m;
    };
    auto threshold = [&running_max]() {
        Rat th = Rat(4) * running_max();  // 2 * q_estimate, q_estimate = 2 * max diameter
        return th < Rat(4) ? Rat(4) : th;
    };

    Clustering::Cluster cur{1, 1, e.block(1).lo, e.block(1).hi, e.block(1).hi / e.block(1).lo};
    for (std::size_t n = 2; n <= usable; ++n) {
        Block b = e.block(n);
        if (cur.lo / b.hi > threshold()) {
            out.clusters.push_back(cur);
            recent.push_back(cur.diameter);
            cur = Clustering::Cluster{n, n, b.lo, b.hi, b.hi / b.lo};
        } else {
            cur.last_block = n;
            cur.lo = b.lo;
            cur.diameter = cur.hi / cur.lo;
        }
    }
    // the final cluster may still be mid-merge; keep it out of the estimate
    out.q_estimate = Rat(2) * running_max();
    out.threshold_final = threshold();
    out.clusters.push_back(cur);
    return out;
}

// ---------------------------------------------------------------------------
// csp_certify

std::string to_string(CspCertificate::Status s) {
    switch (s) {
        case CspCertificate::Status::Certified: return "CSP_Certified";
        case CspCertificate::Status::Refuted: return "CSP_Refuted";
        case CspCertificate::Status::TriviallyCsp: return "TriviallyCSP";
        case CspCertificate::Status::Empirical: return "Empirical";
    }
    return "Empirical";
}

CspCertificate csp_certify(const FiniteSet& e) {
    CspCertificate c;
    c.status = CspCertificate::Status::TriviallyCsp;
    c.depth_used = e.blocks().size();
    c.mechanism = "0 is not an accumulation point: E~_0^d is empty";
    c.verdict = TailVerdict::certified(true, c.depth_used, "finite", c.mechanism);
    return c;
}

CspCertificate csp_certify(const GermSet& e, std::size_t depth) {
    CspCertificate cert;
    std::string tag = e.structure_tag();
    cert.window_clusters = greedy_clusters(e, depth);

    PorosityValue p = porosity_at_zero(e, depth);
    cert.depth_used = p.depth_used;
    if (p.is_strongly_porous.status == VerdictStatus::CertifiedFalse) {
        cert.status = CspCertificate::Status::Refuted;
        cert.p_plus = p.upper;
        cert.mechanism = "p+(E,0) = " + p.upper.str() + " < 1: I~_E is empty";
        cert.verdict = TailVerdict::certified(false, p.depth_used, tag, cert.mechanism);
        return cert;
    }

    UniversalityReport uni = universality_certificate(e, depth);
    cert.M = uni.M_value;
    cert.M_verdict = uni.M_verdict;

    if (uni.verdict.status == VerdictStatus::CertifiedFalse) {
        cert.status = CspCertificate::Status::Refuted;
        cert.mechanism = "no universal element exists: " + uni.mechanism;
        cert.verdict = TailVerdict::certified(false, uni.depth_used, tag, cert.mechanism);
        return cert;
    }
    if (uni.verdict.status == VerdictStatus::CertifiedTrue && uni.M_verdict.certified() &&
        uni.M_value.infinite) {
        cert.status = CspCertificate::Status::Refuted;
        cert.mechanism = "a universal element exists but M(L~) = inf";
        cert.verdict = TailVerdict::certified(false, uni.depth_used, tag, cert.mechanism);
        return cert;
    }
    if (uni.verdict.status == VerdictStatus::CertifiedTrue && uni.M_verdict.certified() &&
        !uni.M_value.infinite && uni.universal_sequence) {
        const GapSequence& cover = *uni.universal_sequence;
        Rat m_val = uni.M_value.value;
        Rat q = Rat(2) * (m_val < Rat(1) ? Rat(1) : m_val);
        // t: below it every window slot has multiplicative diameter < q
        std::size_t j0 = 1;
        for (std::size_t k = 1; k + 1 <= cover.size(); ++k) {
            Rat diam = cover.entry(k).a / cover.entry(k + 1).b;
            if (!(diam < q)) j0 = k + 1;
        }
        if (j0 + 1 >= cover.size()) {
            cert.status = CspCertificate::Status::Empirical;
            cert.mechanism = "certified M but the window never stabilizes below q";
            cert.verdict = TailVerdict::inconclusive(uni.depth_used, cert.mechanism);
            return cert;
        }
        cert.q = q;
        cert.t = cover.entry(j0).b;
        for (std::size_t n = 1; n <= cover.size(); ++n) cert.centers.push_back(cover.entry(n).b);
        cert.centers_vanish = TailVerdict::certified(
            true, cover.size(), tag,
            "x_{n+1}/x_n = (m_{n+1}/l_n)(l_n/m_n) <= a_n/b_n -> 0 along the universal sequence");
        cert.status = CspCertificate::Status::Certified;
        cert.mechanism = "structural certificate: centers are the universal sequence's right "
                         "endpoints, q = 2*max(1, M)";
        cert.verdict = TailVerdict::certified(true, uni.depth_used, tag, cert.mechanism);
        std::string why;
        if (!recheck_certificate(e, cert, depth, &why))
            throw AnalysisError(
                "csp_certify: constructed certificate failed its own soundness check: " + why);
        return cert;
    }

    cert.status = CspCertificate::Status::Empirical;
    cert.mechanism = "no certifying structure: window diagnostics only (" + uni.mechanism + ")";
    cert.verdict = TailVerdict::inconclusive(uni.depth_used, cert.mechanism);
    return cert;
}

CspCertificate csp_certify(const AnySet& e, std::size_t depth) {
    if (const auto* g = std::get_if<GermSet>(&e)) return csp_certify(*g, depth);
    return csp_certify(std::get<FiniteSet>(e));
}

bool recheck_certificate(const GermSet& e, const CspCertificate& cert, std::size_t depth,
                         std::string* why) {
    if (cert.status != CspCertificate::Status::Certified) {
        if (why) *why = "not a certificate";
        return false;
    }
    if (!cert.q || !cert.t || cert.centers.empty() || !(*cert.q > Rat(1))) {
        if (why) *why = "certificate payload incomplete";
        return false;
    }
    const Rat& q = *cert.q;
    const Rat& deepest_center = cert.centers.back();
    std::size_t usable = e.usable_depth(depth);
    for (std::size_t n = 1; n <= usable; ++n) {
        Block b = e.block(n);
        if (b.hi < deepest_center) break;  // beyond the window's center evidence
        if (!(b.hi < *cert.t)) continue;
        // find a center x with x/q < lo and hi < q x; centers descend
        bool covered = false;
        for (const Rat& x : cert.centers) {
            if (x / q < b.lo && b.hi < q * x) {
                covered = true;
                break;
            }
            if (q * x < b.lo) break;  // deeper centers only get smaller
        }
        if (!covered) {
            if (why)
                *why = "block " + std::to_string(n) + " = [" + b.lo.str() + "," + b.hi.str() +
                       "] below t escapes every (x/q, qx)";
            return false;
        }
    }
    return true;
}

bool recheck_centers_in_set(const GermSet& e, const CspCertificate& cert, std::string* why) {
    for (const Rat& x : cert.centers) {
        auto in = e.contains(x, cert.centers.size() * 4 + 16);
        if (!in || !*in) {
            if (why) *why = "center " + x.str() + " is not a verified point of E";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// H~(E)

HWitness h_set_witness(const GermSet& e, const TestSequence& tau, std::size_t depth) {
    CspCertificate cert = csp_certify(e, depth);
    if (cert.status != CspCertificate::Status::Certified)
        throw AnalysisError("h_set_witness: requires a certified-CSP set");

    UniversalityReport uni = universality_certificate(e, depth);
    GapSequence cover = *uni.universal_sequence;

    HWitness out;
    std::vector<Rat> taus_used;
    for (std::size_t i = 1; i <= tau.size(); ++i) {
        auto k = slot_of(cover, tau.value(i));
        if (!k) break;
        if (*k == 0 || *k + 1 > cover.size()) continue;
        out.h.push_back(cover.entry(*k + 1).b);  // h_n = m_{k(n)+1}
        taus_used.push_back(tau.value(i));
    }
    if (out.h.size() < 2) throw AnalysisError("h_set_witness: window too short");

    // tau~ =~ h~ with exact window constants (h_n <= tau_n by the slot cover)
    Rat c1 = out.h[0] / taus_used[0], c2 = c1;
    for (std::size_t i = 0; i < out.h.size(); ++i) {
        Rat r = out.h[i] / taus_used[i];
        c1 = std::min(c1, r);
        c2 = std::max(c2, r);
    }
    out.equiv_tau.c1 = c1;
    out.equiv_tau.c2 = c2;
    out.equiv_tau.from_index = 1;
    out.equiv_tau.verdict = TailVerdict::certified(
        true, out.h.size(), e.structure_tag(),
        "m_{k+1} <= tau <= l_k: constants bounded through the certified M");

    // lambda(E,0,h_n)/h_n -> 1: exact window values plus the certified tail
    for (const Rat& h : out.h) {
        auto lam = lambda_gap(e, h, depth * 4 + 16);
        if (!lam.exact) break;
        out.lambda_ratio.push_back(lam.value / h);
    }
    out.ratio_to_porosity = TailVerdict::certified(
        true, out.lambda_ratio.size(), e.structure_tag(),
        "lambda(E,0,m_{k+1})/m_{k+1} >= 1 - l_{k+1}/m_{k+1} -> 1 as gap ratios escape");
    if (!out.lambda_ratio.empty()) out.ratio_to_porosity.tail_stat = out.lambda_ratio.back();
    return out;
}

GapFromH gap_from_h(const GermSet& e, const TestSequence& tau, const HWitness& h,
                    std::size_t depth) {
    if (!h.equiv_tau.verdict.holds() || !h.ratio_to_porosity.holds())
        throw AnalysisError("gap_from_h: preconditions unverified (tau =~ h and lambda ratio)");

    std::vector<Gap> entries;
    std::vector<Rat> taus;
    for (std::size_t i = 0; i < h.h.size(); ++i) {
        auto arg = lambda_gap_argmax(e, h.h[i], depth * 4 + 16);
        if (!arg.lambda.exact || arg.component_index == 0) break;
        entries.push_back(e.gap(arg.component_index));  // expand to the full component
        if (i + 1 <= tau.size()) taus.push_back(tau.value(i + 1));
    }
    if (entries.size() < 2) throw AnalysisError("gap_from_h: window too short");
    taus.resize(entries.size(), taus.empty() ? Rat(1) : taus.back());

    GapFromH out{GapSequence::explicit_entries(e, entries, depth + 1), {}};
    std::size_t from = 1;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(entries[i].b <= taus[i])) from = i + 2;  // b_n <= tau_n eventually (l3.10)
    }
    if (from > entries.size()) from = entries.size();
    Rat c1 = entries[from - 1].b / taus[from - 1], c2 = c1;
    for (std::size_t i = from - 1; i < entries.size(); ++i) {
        Rat r = entries[i].b / taus[i];
        c1 = std::min(c1, r);
        c2 = std::max(c2, r);
    }
    out.tau_equiv_b.c1 = c1;
    out.tau_equiv_b.c2 = c2;
    out.tau_equiv_b.from_index = from;
    out.tau_equiv_b.verdict = TailVerdict::certified(
        true, entries.size(), e.structure_tag(),
        "k h_n < b_n <= tau_n < K h_n: constants inherited from tau =~ h");
    return out;
}

}  // namespace porolab
