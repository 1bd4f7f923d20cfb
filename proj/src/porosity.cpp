#include "porolab/porosity.hpp"

#include "porolab/errors.hpp"

#include <algorithm>

namespace porolab {

namespace {

Rat max_rat(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace

LambdaResult lambda_gap(const GermSet& e, const Rat& h, std::size_t depth_bound) {
    if (!h.positive()) throw AnalysisError("lambda: h must be positive");
    LambdaResult res;
    res.value = Rat(0);

    Block top = e.block(1);
    if (h > top.hi) res.value = h - top.hi;  // head region (top.hi, h) is free of E

    std::size_t limit = e.usable_depth(depth_bound);
    for (std::size_t n = 1; n < limit; ++n) {
        Gap g = e.gap(n);
        ++res.gaps_scanned;
        if (g.a < h) {
            Rat hi = g.b < h ? g.b : h;  // clip to (0, h)
            if (hi > g.a) res.value = max_rat(res.value, hi - g.a);
        }
        // everything deeper lives inside (0, block(n+1).hi)
        if (e.block(n + 1).hi <= res.value) {
            res.exact = true;
            return res;
        }
    }
    res.exact = false;  // depth bound reached before the certainty cutoff
    return res;
}

LambdaResult lambda_gap(const FiniteSet& e, const Rat& h) {
    if (!h.positive()) throw AnalysisError("lambda: h must be positive");
    LambdaResult res;
    res.value = Rat(0);
    const auto& bs = e.blocks();
    if (bs.empty()) {
        res.value = h;  // E cap (0,h) is empty: the whole interval is a gap
        return res;
    }
    if (h > bs.front().hi) res.value = h - bs.front().hi;
    for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
        const Rat& a = bs[i + 1].hi;
        const Rat& b = bs[i].lo;
        ++res.gaps_scanned;
        if (a < h) {
            Rat hi = b < h ? b : h;
            if (hi > a) res.value = max_rat(res.value, hi - a);
        }
    }
    // tail gap (0, least point); 0 itself is never inside (0, h)
    res.value = max_rat(res.value, bs.back().lo < h ? bs.back().lo : h);
    return res;
}

LambdaResult lambda_gap(const AnySet& e, const Rat& h, std::size_t depth_bound) {
    if (const auto* g = std::get_if<GermSet>(&e)) return lambda_gap(*g, h, depth_bound);
    return lambda_gap(std::get<FiniteSet>(e), h);
}

LambdaArg lambda_gap_argmax(const GermSet& e, const Rat& h, std::size_t depth_bound) {
    if (!h.positive()) throw AnalysisError("lambda: h must be positive");
    LambdaArg out;
    out.lambda.value = Rat(0);
    out.component_index = 0;

    Block top = e.block(1);
    if (h > top.hi) {
        out.lambda.value = h - top.hi;
        out.u = top.hi;
        out.v = h;
    }
    std::size_t limit = e.usable_depth(depth_bound);
    for (std::size_t n = 1; n < limit; ++n) {
        Gap g = e.gap(n);
        ++out.lambda.gaps_scanned;
        if (g.a < h) {
            Rat hi = g.b < h ? g.b : h;
            if (hi > g.a && hi - g.a > out.lambda.value) {
                out.lambda.value = hi - g.a;
                out.u = g.a;
                out.v = hi;
                out.component_index = n;
            }
        }
        if (e.block(n + 1).hi <= out.lambda.value) {
            out.lambda.exact = true;
            return out;
        }
    }
    out.lambda.exact = false;
    return out;
}

PorosityProfile porosity_profile(const GermSet& e, std::size_t depth) {
    if (depth == 0) throw AnalysisError("porosity_profile: depth must be >= 1");
    PorosityProfile p;
    std::size_t usable = e.usable_depth(depth + 1);
    std::size_t gaps = usable > 1 ? usable - 1 : 0;
    p.depth_used = gaps;
    p.ratios.reserve(gaps);
    for (std::size_t n = 1; n <= gaps; ++n) {
        Gap g = e.gap(n);
        p.ratios.push_back(g.length() / g.b);  // r_n = 1 - a_n/b_n, in (0,1)
    }
    if (p.ratios.empty()) throw AnalysisError("porosity_profile: no gaps representable");
    p.window_max = *std::max_element(p.ratios.begin(), p.ratios.end());
    p.tail_max = *std::max_element(p.ratios.begin() + p.ratios.size() / 2, p.ratios.end());

    const TailClass& cls = e.gap_ratio_class();
    auto limsup = cls.limsup();
    if (limsup) {
        bool unbounded = limsup->infinite;
        p.limsup_is_one = TailVerdict::certified(
            unbounded, gaps, e.structure_tag(),
            unbounded ? "gap ratios b/a are unbounded" : "gap ratios bounded by " + limsup->str());
        p.limsup_is_one.tail_stat = p.tail_max;
    } else {
        // no declared structure: report what the window shows
        bool near_one = p.tail_max >= Rat(1023, 1024);
        p.limsup_is_one =
            TailVerdict::empirical(near_one, gaps, "window tail max r_n = " + p.tail_max.str());
        p.limsup_is_one.tail_stat = p.tail_max;
    }
    return p;
}

PorosityValue porosity_at_zero(const GermSet& e, std::size_t depth) {
    PorosityProfile prof = porosity_profile(e, depth);
    PorosityValue v;
    v.depth_used = prof.depth_used;

    const TailClass& cls = e.gap_ratio_class();
    auto limsup = cls.limsup();
    if (limsup) {
        // p+ = limsup r_n = 1 - 1/limsup(b/a), exactly
        if (limsup->infinite) {
            v.lower = v.upper = Rat(1);
        } else {
            v.lower = v.upper = Rat(1) - limsup->value.inverse();
        }
        v.exact = true;
        bool porous = limsup->infinite;
        v.is_strongly_porous = TailVerdict::certified(porous, prof.depth_used, e.structure_tag(),
                                                      "p+ = " + v.upper.str());
        v.is_strongly_porous.tail_stat = prof.tail_max;
    } else {
        v.lower = prof.window_max;  // any window ratio is a certified lower bound
        v.upper = Rat(1);
        v.exact = false;
        v.is_strongly_porous = prof.limsup_is_one;
    }
    return v;
}

PorosityValue porosity_at_zero(const FiniteSet& e) {
    PorosityValue v;
    v.lower = v.upper = Rat(1);
    v.exact = true;
    v.depth_used = e.blocks().size();
    v.is_strongly_porous =
        TailVerdict::certified(true, e.blocks().size(), "finite",
                               "0 is isolated: lambda(E,0,h)/h -> 1 below the least point of E");
    return v;
}

PorosityValue porosity_at_zero(const AnySet& e, std::size_t depth) {
    if (const auto* g = std::get_if<GermSet>(&e)) return porosity_at_zero(*g, depth);
    return porosity_at_zero(std::get<FiniteSet>(e));
}

}  // namespace porolab
