#include "porolab/gapseq.hpp"

#include "porolab/errors.hpp"

#include <algorithm>
#include <map>

namespace porolab {

namespace {

std::size_t gap_window(const GermSet& e, std::size_t depth) {
    std::size_t blocks = e.usable_depth(depth + 1);
    return blocks > 1 ? blocks - 1 : 0;
}

// window statistics of the entry ratios b/a
struct RatioStats {
    Rat first_half_max, tail_min, tail_max;
    bool growing = false;  // heuristic: the tail sits strictly above the head
};

std::optional<RatioStats> ratio_stats(const GapSequence& s) {
    if (s.size() < 4) return std::nullopt;
    RatioStats st;
    std::size_t half = s.size() / 2;
    st.first_half_max = s.entry(1).ratio();
    for (std::size_t k = 2; k <= half; ++k)
        st.first_half_max = std::max(st.first_half_max, s.entry(k).ratio());
    st.tail_min = st.tail_max = s.entry(half + 1).ratio();
    for (std::size_t k = half + 2; k <= s.size(); ++k) {
        Rat r = s.entry(k).ratio();
        st.tail_min = std::min(st.tail_min, r);
        st.tail_max = std::max(st.tail_max, r);
    }
    st.growing = st.tail_min > st.first_half_max;
    return st;
}

using K = TailClass::Kind;

}  // namespace

// ---------------------------------------------------------------------------
// GapSequence construction

void GapSequence::classify() {
    if (desc_.kind != GapSeqDescriptor::Kind::Explicit) {
        // subsequence of the gap stream: a_n = block(k_n + 1).hi strictly decreases
        almost_dec_ = TailVerdict::certified(true, size(), "germ-stream",
                                             "left endpoints strictly decrease by construction");
        almost_sdec_ = almost_dec_;
        witness_ = 1;
        return;
    }
    // window check with witness = first index from which the tail is monotone
    std::size_t wit_dec = 1, wit_sdec = 1;
    for (std::size_t k = 1; k + 1 <= size(); ++k) {
        if (entry(k + 1).a > entry(k).a) wit_dec = wit_sdec = k + 1;
        else if (entry(k + 1).a == entry(k).a) wit_sdec = k + 1;
    }
    bool dec = wit_dec < size() || size() <= 1;
    bool sdec = wit_sdec < size() || size() <= 1;
    almost_dec_ = TailVerdict::empirical(dec, size(), "window check");
    almost_dec_.witness_index = wit_dec;
    almost_sdec_ = TailVerdict::empirical(sdec, size(), "window check");
    almost_sdec_.witness_index = wit_sdec;
    witness_ = wit_dec;
}

GapSequence GapSequence::all_gaps(const GermSet& e, std::size_t depth) {
    GapSequence s(e, GapSeqDescriptor{GapSeqDescriptor::Kind::All, 1, 1, Rat()});
    std::size_t gaps = gap_window(e, depth);
    for (std::size_t n = 1; n <= gaps; ++n) {
        s.entries_.push_back(e.gap(n));
        s.source_.push_back(n);
    }
    s.horizon_ = gaps;
    s.classify();
    return s;
}

GapSequence GapSequence::arithmetic(const GermSet& e, std::size_t start, std::size_t step,
                                    std::size_t depth) {
    if (start == 0 || step == 0) throw AnalysisError("gap sequence: bad arithmetic descriptor");
    GapSequence s(e, GapSeqDescriptor{GapSeqDescriptor::Kind::Arithmetic, start, step, Rat()});
    std::size_t gaps = gap_window(e, depth);
    for (std::size_t n = start; n <= gaps; n += step) {
        s.entries_.push_back(e.gap(n));
        s.source_.push_back(n);
    }
    s.horizon_ = gaps;
    s.classify();
    return s;
}

GapSequence GapSequence::filtered(const GermSet& e, const Rat& c, std::size_t depth) {
    GapSequence s(e, GapSeqDescriptor{GapSeqDescriptor::Kind::Filtered, 1, 1, c});
    std::size_t gaps = gap_window(e, depth);
    for (std::size_t n = 1; n <= gaps; ++n) {
        Gap g = e.gap(n);
        if (g.ratio() > c) {
            s.entries_.push_back(g);
            s.source_.push_back(n);
        }
    }
    s.horizon_ = gaps;
    s.classify();
    return s;
}

GapSequence GapSequence::explicit_entries(const GermSet& e, std::vector<Gap> entries,
                                          std::size_t search_depth) {
    GapSequence s(e, GapSeqDescriptor{});
    std::size_t gaps = gap_window(e, search_depth);
    for (const Gap& g : entries) {
        // components are disjoint, so the left endpoint identifies the gap
        std::optional<std::size_t> found;
        for (std::size_t n = 1; n <= gaps; ++n) {
            Gap cand = e.gap(n);
            if (cand.a == g.a && cand.b == g.b) {
                found = n;
                break;
            }
            if (cand.a < g.a) break;  // deeper gaps only get smaller
        }
        if (!found)
            throw AnalysisError("gap sequence: (" + g.a.str() + "," + g.b.str() +
                                ") is not a connected component of Ext E within the window");
        s.entries_.push_back(g);
        s.source_.push_back(*found);
    }
    s.horizon_ = gaps;
    s.classify();
    return s;
}

// ---------------------------------------------------------------------------
// I~_E membership

TailVerdict is_IE_member(const GermSet& e, const GapSequence& s, std::size_t depth) {
    if (!same_set(e, s.base())) throw AnalysisError("is_IE_member: sequence built over another set");
    using DK = GapSeqDescriptor::Kind;
    const TailClass& cls = e.gap_ratio_class();
    std::string tag = e.structure_tag();
    std::size_t d = std::min(depth, s.size());

    if (s.size() == 0)
        return TailVerdict::certified(false, 0, tag, "no entries below the threshold");

    // a_n -> 0
    TailVerdict a_zero;
    if (s.descriptor().kind != DK::Explicit) {
        a_zero = TailVerdict::certified(true, d, "germ-stream",
                                        "subsequence of a block stream accumulating at 0");
        if (s.descriptor().kind == DK::Filtered && cls.certified) {
            // the filtered subsequence must be infinite for the claim to make sense
            bool infinite = cls.kind == K::EscapeToInfinity ||
                            cls.kind == K::RecurringPlusEscape || cls.kind == K::PowerFamily ||
                            ((cls.kind == K::Constant || cls.kind == K::FiniteRecurring) &&
                             cls.recurring.back() > s.descriptor().threshold);
            if (!infinite)
                a_zero = TailVerdict::certified(false, d, tag,
                                                "only finitely many gaps exceed the threshold");
        }
    } else {
        bool dec = s.almost_decreasing().holds();
        a_zero = TailVerdict::empirical(dec && s.entry(s.size()).a < s.entry(1).a, d,
                                        "explicit window evidence only");
    }

    // b_n/a_n -> infinity
    TailVerdict ratio;
    auto empirical_ratio = [&]() {
        auto st = ratio_stats(s);
        if (!st) return TailVerdict::inconclusive(d, "window too short");
        bool diverging = st->growing && st->tail_max >= Rat(64);
        TailVerdict v = TailVerdict::empirical(diverging, d,
                                               "window ratio tail in [" + st->tail_min.str() +
                                                   ", " + st->tail_max.str() + "]");
        v.tail_stat = st->tail_max;
        return v;
    };
    switch (s.descriptor().kind) {
        case DK::All:
            if (cls.certified && cls.kind == K::EscapeToInfinity)
                ratio = TailVerdict::certified(true, d, tag, "gap ratios escape to infinity");
            else if (cls.certified && (cls.kind == K::Constant || cls.kind == K::FiniteRecurring ||
                                       cls.kind == K::RecurringPlusEscape ||
                                       cls.kind == K::PowerFamily))
                ratio = TailVerdict::certified(false, d, tag,
                                               "a bounded ratio value recurs forever");
            else
                ratio = empirical_ratio();
            break;
        case DK::Arithmetic:
            if (cls.certified && cls.kind == K::EscapeToInfinity)
                ratio = TailVerdict::certified(true, d, tag,
                                               "subsequence of ratios escaping to infinity");
            else if (cls.certified && cls.kind == K::Constant)
                ratio = TailVerdict::certified(false, d, tag, "constant gap ratio");
            else
                ratio = empirical_ratio();
            break;
        case DK::Filtered: {
            const Rat& c = s.descriptor().threshold;
            if (cls.certified && cls.kind == K::EscapeToInfinity)
                ratio = TailVerdict::certified(true, d, tag, "gap ratios escape to infinity");
            else if (cls.certified && cls.kind == K::RecurringPlusEscape &&
                     !(cls.recurring.back() > c))
                ratio = TailVerdict::certified(
                    true, d, tag, "recurring values stay at or below the threshold; the rest escape");
            else if (cls.certified && cls.kind == K::PowerFamily)
                ratio = TailVerdict::certified(false, d, tag,
                                               "a power above the threshold recurs forever");
            else if (cls.certified &&
                     (cls.kind == K::Constant || cls.kind == K::FiniteRecurring) &&
                     cls.recurring.back() > c)
                ratio = TailVerdict::certified(false, d, tag, "bounded recurring ratios");
            else
                ratio = empirical_ratio();
            break;
        }
        case DK::Explicit: ratio = empirical_ratio(); break;
    }
    return TailVerdict::conjoin(a_zero, ratio);
}

// ---------------------------------------------------------------------------
// Preorder

PrecedesResult precedes(const GapSequence& a, const GapSequence& l, std::size_t depth) {
    if (!same_set(a.base(), l.base()))
        throw AnalysisError("precedes: sequences are over different sets");
    if (!a.almost_decreasing().holds() || !l.almost_decreasing().holds())
        throw AnalysisError("precedes: both sequences must carry almost-decreasing verdicts");

    using DK = GapSeqDescriptor::Kind;
    const auto& da = a.descriptor();
    const auto& dl = l.descriptor();

    // structural impossibility: an arithmetic progression misses whole residue
    // classes of an All/coarser sequence forever
    if (da.kind == DK::All && dl.kind == DK::Arithmetic && dl.step >= 2) {
        PrecedesResult r;
        std::size_t first_missing = dl.start == 1 ? 2 : 1;
        r.verdict = TailVerdict::certified(false, std::min(depth, a.size()), "descriptor",
                                           "source indices outside the progression recur forever");
        r.verdict.witness_index = first_missing;
        return r;
    }

    // exact matching by source index (components are disjoint)
    std::map<std::size_t, std::size_t> l_pos;  // source index -> 1-based position in L
    for (std::size_t k = 1; k <= l.size(); ++k) l_pos.emplace(l.source_index(k), k);

    std::size_t judged = 0;  // judge only entries within L's examined horizon
    for (std::size_t k = 1; k <= a.size(); ++k)
        if (a.source_index(k) <= l.horizon()) judged = k;

    std::vector<std::optional<std::size_t>> match(judged);
    std::optional<std::size_t> first_unmatched, last_unmatched;
    for (std::size_t k = 1; k <= judged; ++k) {
        auto it = l_pos.find(a.source_index(k));
        if (it != l_pos.end()) {
            match[k - 1] = it->second;
        } else {
            if (!first_unmatched) first_unmatched = k;
            last_unmatched = k;
        }
    }

    PrecedesResult r;
    if (judged == 0) {
        r.verdict = TailVerdict::inconclusive(0, "no comparable window");
        return r;
    }
    if (last_unmatched && *last_unmatched == judged) {
        // unmatchable entries persist to the end of the evidence window
        r.verdict = TailVerdict::empirical(false, judged,
                                           "entry " + std::to_string(*first_unmatched) +
                                               " (and later ones) never re-indexes into L");
        r.verdict.witness_index = *first_unmatched;
        return r;
    }
    Embedding emb;
    emb.N1 = last_unmatched ? *last_unmatched + 1 : 1;
    for (std::size_t k = emb.N1; k <= judged; ++k) emb.f.push_back(*match[k - 1]);
    // exactness is by construction; assert it anyway
    for (std::size_t i = 0; i < emb.f.size(); ++i) {
        if (!(a.entry(emb.N1 + i) == l.entry(emb.f[i])))
            throw AnalysisError("precedes: internal matching produced unequal components");
    }
    bool structural =
        dl.kind == DK::All ||
        (da.kind == dl.kind && da.start == dl.start && da.step == dl.step &&
         da.threshold == dl.threshold);
    r.embedding = std::move(emb);
    r.verdict = structural
                    ? TailVerdict::certified(true, judged, "descriptor",
                                             "subsequence re-indexes into the full stream")
                    : TailVerdict::empirical(true, judged, "window matching from N1");
    r.verdict.witness_index = r.embedding->N1;
    return r;
}

TailVerdict equiv(const GapSequence& a, const GapSequence& l, std::size_t depth) {
    return TailVerdict::conjoin(precedes(a, l, depth).verdict, precedes(l, a, depth).verdict);
}

GapSequence strictify(const GapSequence& l) {
    const TailVerdict& dec = l.almost_decreasing();
    if (!dec.holds())
        throw AnalysisError("strictify: almost-decreasing verdict missing or failing");
    std::size_t start = l.monotone_witness();
    if (start > l.size()) throw AnalysisError("strictify: witness beyond the window");

    GapSequence out(l.base_, l.desc_);
    out.horizon_ = l.horizon_;
    std::size_t keep = start;
    out.entries_.push_back(l.entry(keep));
    out.source_.push_back(l.source_index(keep));
    for (std::size_t n = keep + 1; n <= l.size(); ++n) {
        if (l.entry(n).a < out.entries_.back().a) {
            out.entries_.push_back(l.entry(n));
            out.source_.push_back(l.source_index(n));
        }
    }
    if (out.entries_.size() == l.entries_.size() && out.source_ == l.source_) {
        out.desc_ = l.desc_;  // fixed point keeps the structural descriptor
    } else {
        out.desc_ = GapSeqDescriptor{};  // genuinely strictified: explicit window
    }
    out.classify();
    return out;
}

// ---------------------------------------------------------------------------
// M(L~)

std::pair<ExtRat, TailVerdict> M_of(const GapSequence& l, std::size_t depth) {
    if (!l.almost_decreasing().holds())
        throw AnalysisError("M_of: sequence must be almost decreasing");
    std::size_t n = std::min(depth + 1, l.size());
    if (n < 2) return {ExtRat::inf(), TailVerdict::inconclusive(0, "window too short")};

    std::vector<Rat> vals;
    vals.reserve(n - 1);
    for (std::size_t k = 1; k + 1 <= n; ++k) vals.push_back(l.entry(k).a / l.entry(k + 1).b);
    Rat tail_max = vals[vals.size() / 2];
    for (std::size_t i = vals.size() / 2; i < vals.size(); ++i)
        tail_max = std::max(tail_max, vals[i]);

    const GermSet& e = l.base();
    const TailClass& consec = e.consec_class();
    const TailClass& gaps = e.gap_ratio_class();
    std::string tag = e.structure_tag();
    using DK = GapSeqDescriptor::Kind;
    const auto& d = l.descriptor();

    auto certified_value = [&]() -> std::optional<ExtRat> {
        if (d.kind == DK::All || (d.kind == DK::Arithmetic && d.step == 1)) {
            return consec.limsup();
        }
        if (d.kind == DK::Arithmetic && d.step >= 2) {
            // l_k/m_{k+1} across a stride multiplies in step-1 intervening gap
            // ratios and step slot diameters
            if (gaps.certified && gaps.kind == K::EscapeToInfinity) return ExtRat::inf();
            if (gaps.certified && gaps.kind == K::Constant && consec.certified &&
                consec.kind == K::Constant) {
                Rat g = gaps.recurring.front(), q = consec.recurring.front();
                Rat v(1);
                for (std::size_t i = 0; i < d.step; ++i) v = v * q;
                for (std::size_t i = 0; i + 1 < d.step; ++i) v = v * g;
                return ExtRat::finite(v);
            }
            return std::nullopt;
        }
        if (d.kind == DK::Filtered) {
            if (gaps.certified && gaps.kind == K::EscapeToInfinity) {
                // eventually every gap passes the filter
                return consec.limsup();
            }
            if (gaps.certified && gaps.kind == K::RecurringPlusEscape &&
                !(gaps.recurring.back() > d.threshold)) {
                // period-2 interleave over point blocks: the stride across one
                // skipped bounded gap contributes exactly that bounded ratio
                const auto* rg = std::get_if<SetSpec::RatioGaps>(&e.spec().shape);
                if (rg && std::holds_alternative<RatioMap::Interleave>(rg->gap_ratio.node())) {
                    bool point_blocks = rg->block_ratio.all_at_least(Rat(1)) &&
                                        rg->block_ratio.all_less(Rat(1) + Rat(1, 1024));
                    if (point_blocks) return ExtRat::finite(gaps.recurring.back());
                }
            }
            return std::nullopt;
        }
        return std::nullopt;
    }();

    if (certified_value) {
        TailVerdict v = TailVerdict::certified(true, n - 1, tag,
                                               "M = " + certified_value->str() +
                                                   " from declared structure");
        v.tail_stat = tail_max;
        return {*certified_value, v};
    }
    TailVerdict v = TailVerdict::empirical(true, n - 1,
                                           "window tail max " + tail_max.str() +
                                               "; no certifying structure");
    v.tail_stat = tail_max;
    return {ExtRat::finite(tail_max), v};
}

// ---------------------------------------------------------------------------
// universality criterion

UniversalityReport universality_certificate(const GermSet& e, std::size_t depth,
                                            std::vector<Rat> c_grid) {
    UniversalityReport rep;
    std::size_t gaps = gap_window(e, depth);
    rep.depth_used = gaps;

    if (c_grid.empty()) c_grid = {Rat(3, 2), Rat(2), Rat(3), Rat(5), Rat(9)};
    // data-driven candidates: midpoints between distinct observed ratio levels
    {
        std::vector<Rat> seen;
        for (std::size_t k = 1; k <= gaps; ++k) seen.push_back(e.gap_ratio(k));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (std::size_t i = 0; i + 1 < seen.size() && i < 8; ++i)
            c_grid.push_back((seen[i] + seen[i + 1]) / Rat(2));
    }
    const TailClass& cls = e.gap_ratio_class();
    if (cls.certified && !cls.recurring.empty())
        c_grid.push_back(cls.recurring.back() + Rat(1));  // structural candidate above recurrence
    std::sort(c_grid.begin(), c_grid.end());
    c_grid.erase(std::unique(c_grid.begin(), c_grid.end()), c_grid.end());
    c_grid.erase(std::remove_if(c_grid.begin(), c_grid.end(),
                                [](const Rat& c) { return !(c > Rat(1)); }),
                 c_grid.end());

    for (const Rat& c : c_grid) {
        UniversalityReport::CandidateStats st;
        st.c = c;
        for (std::size_t k = 1; k <= gaps; ++k) {
            Rat r = e.gap_ratio(k);
            if (r > c) {
                ++st.above;
                if (!st.min_above || r < *st.min_above) st.min_above = r;
            } else {
                ++st.below;
                if (!st.max_below || r > *st.max_below) st.max_below = r;
            }
        }
        rep.per_c.push_back(std::move(st));
    }

    std::string tag = e.structure_tag();
    PorosityValue p = porosity_at_zero(e, depth);
    if (!p.is_strongly_porous.holds()) {
        // p+ = 1 is necessary for any qualifying gap sequence
        bool certified = p.is_strongly_porous.certified();
        rep.mechanism = "p+ = " + (p.exact ? p.upper.str() : ("<= " + p.upper.str())) +
                        " < 1: I~_E is empty (no gap sequence qualifies)";
        rep.verdict = certified ? TailVerdict::certified(false, gaps, tag, rep.mechanism)
                                : TailVerdict::empirical(false, gaps, rep.mechanism);
        return rep;
    }

    auto schedule_for = [&](const Rat& c, GapSequence& uni) {
        for (const Rat& mult : {Rat(2), Rat(10), Rat(100)}) {
            Rat K = c * mult;
            Rat t = e.gap(1).b;  // default: the whole window already qualifies
            for (std::size_t k = 1; k <= uni.size(); ++k) {
                if (!(uni.entry(k).ratio() > K)) t = uni.entry(k).a;  // deepest violation
            }
            rep.t_schedule.emplace_back(K, t);
        }
    };

    if (cls.certified && cls.kind == K::EscapeToInfinity) {
        rep.c = c_grid.front();
        GapSequence uni = GapSequence::all_gaps(e, depth);
        rep.mechanism =
            "gap ratios escape to infinity: the full gap stream eventually contains every "
            "component";
        rep.verdict = TailVerdict::certified(true, gaps, tag, rep.mechanism);
        schedule_for(*rep.c, uni);
        auto m = M_of(uni, depth);
        rep.M_value = m.first;
        rep.M_verdict = m.second;
        rep.universal_sequence = std::move(uni);
        return rep;
    }

    if (cls.certified && cls.kind == K::RecurringPlusEscape) {
        Rat rec_max = cls.recurring.back();
        std::optional<Rat> chosen;
        for (const Rat& c : c_grid)
            if (!(rec_max > c)) {
                chosen = c;
                break;
            }
        if (chosen) {
            GapSequence uni = GapSequence::filtered(e, *chosen, depth);
            rep.c = chosen;
            rep.mechanism = "recurring ratios stay at or below c = " + chosen->str() +
                            "; gaps above c escape to infinity (declared interleave structure)";
            rep.verdict = TailVerdict::certified(true, gaps, tag, rep.mechanism);
            schedule_for(*chosen, uni);
            auto m = M_of(uni, depth);
            rep.M_value = m.first;
            rep.M_verdict = m.second;
            rep.universal_sequence = std::move(uni);
            return rep;
        }
    }

    if (cls.certified && cls.kind == K::PowerFamily && cls.base > Rat(1)) {
        // every power scale*base^k recurs at arbitrarily small a: for any c the
        // band (c, K] with K = the smallest recurring power above c recurs forever
        Rat witness = cls.scale * cls.base;
        while (!(witness > c_grid.front())) witness = witness * cls.base;
        rep.mechanism = "declared diagonal structure: ratio " + witness.str() +
                        " (and every larger power) recurs at arbitrarily small scales, so no c "
                        "can work";
        rep.verdict = TailVerdict::certified(false, gaps, tag, rep.mechanism);
        rep.verdict.tail_stat = witness;
        return rep;
    }

    if (cls.certified && (cls.kind == K::Constant || cls.kind == K::FiniteRecurring)) {
        // bounded ratios with p+ = 1 cannot happen; defensive
        rep.mechanism = "bounded recurring gap ratios";
        rep.verdict = TailVerdict::certified(false, gaps, tag, rep.mechanism);
        return rep;
    }

    rep.mechanism = "no declared structure: window partition statistics only";
    rep.verdict = TailVerdict::inconclusive(gaps, rep.mechanism);
    return rep;
}

}  // namespace porolab
