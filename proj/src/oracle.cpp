#include "porolab/oracle.hpp"

#include "porolab/errors.hpp"

#include <algorithm>

namespace porolab {

Truncation truncate(const GermSet& e, std::size_t n) {
    Truncation t;
    std::size_t usable = e.usable_depth(n);
    if (usable < 2) throw AnalysisError("truncate: need at least two representable blocks");
    t.blocks.reserve(usable);
    for (std::size_t k = 1; k <= usable; ++k) t.blocks.push_back(e.block(k));
    t.floor = t.blocks.back().lo;
    t.complete = false;
    return t;
}

Truncation truncate(const FiniteSet& e) {
    if (e.blocks().empty()) throw AnalysisError("truncate: empty finite set");
    Truncation t;
    t.blocks = e.blocks();
    t.floor = t.blocks.back().lo;
    t.complete = true;
    return t;
}

Rat brute_lambda(const Truncation& t, const Rat& h) {
    if (!h.positive()) throw AnalysisError("brute_lambda: h must be positive");
    if (!t.complete && h <= t.floor)
        throw AnalysisError("brute_lambda: h <= floor, answer depends on the unknown region");

    Rat best(0);
    auto consider = [&best](const Rat& lo, const Rat& hi) {
        if (hi > lo && hi - lo > best) best = hi - lo;
    };

    // head region above the top block
    if (h > t.blocks.front().hi) consider(t.blocks.front().hi, h);
    // every internal gap, clipped to (0, h)
    for (std::size_t n = 1; n <= t.gap_count(); ++n) {
        Gap g = t.gap(n);
        consider(g.a, g.b < h ? g.b : h);
    }
    if (t.complete) {
        // (0, least point) is certainly free of E
        const Rat& lo_min = t.blocks.back().lo;
        consider(Rat(0), lo_min < h ? lo_min : h);
    } else if (t.floor > best) {
        // a free interval hiding below the floor could be longer than anything found
        throw AnalysisError("brute_lambda: unknown region below floor could dominate");
    }
    return best;
}

Rat brute_profile_sup(const Truncation& t) {
    if (t.blocks.size() < 2) throw AnalysisError("brute_profile_sup: need at least two blocks");

    std::vector<Rat> grid;
    const Rat b1 = t.gap(1).b;
    for (std::size_t n = 1; n <= t.gap_count(); ++n) {
        Gap g = t.gap(n);
        if (g.a > t.floor && g.a <= b1) grid.push_back(g.a);
        if (g.b > t.floor && g.b <= b1) grid.push_back(g.b);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<Rat> mids;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        mids.push_back((grid[i] + grid[i + 1]) / Rat(2));
    grid.insert(grid.end(), mids.begin(), mids.end());

    Rat best(0);
    bool any = false;
    for (const Rat& h : grid) {
        try {
            Rat lam = brute_lambda(t, h);
            Rat ratio = lam / h;
            if (!any || ratio > best) best = ratio;
            any = true;
        } catch (const AnalysisError&) {
            // oracle refused this h (unknown region could dominate): skip
        }
    }
    if (!any) throw AnalysisError("brute_profile_sup: every grid point was refused");
    return best;
}

std::optional<std::vector<std::size_t>> brute_match(const Truncation& t,
                                                    const std::vector<Rat>& tau,
                                                    const Rat& bound) {
    std::vector<std::size_t> pick;
    pick.reserve(tau.size());
    for (const Rat& v : tau) {
        if (!(v > t.floor))
            throw AnalysisError("brute_match: tau entry at or below the truncation floor");
        std::optional<std::size_t> chosen;
        // gap left endpoints descend with the index; the smallest admissible
        // endpoint is the deepest admissible gap
        for (std::size_t n = 1; n <= t.gap_count(); ++n) {
            const Rat a = t.gap(n).a;
            if (a >= v && a <= bound * v) chosen = n;
            if (a < v) break;
        }
        if (!chosen) return std::nullopt;
        pick.push_back(*chosen);
    }
    return pick;
}

}  // namespace porolab
