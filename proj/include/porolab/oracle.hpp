#pragma once

#include "porolab/set.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace porolab {

/// Finite window of a set: the first N blocks plus a floor below which the
/// set is declared unknown. Oracle answers never depend on the unknown region;
/// they refuse instead.
struct Truncation {
    std::vector<Block> blocks;  // descending
    Rat floor;                  // = blocks.back().lo
    bool complete = false;      // built from a FiniteSet: nothing below the floor

    std::size_t gap_count() const { return blocks.size() > 1 ? blocks.size() - 1 : 0; }
    Gap gap(std::size_t n) const {  // 1-based, (blocks[n].hi, blocks[n-1].lo)
        return Gap{blocks[n].hi, blocks[n - 1].lo};
    }
};

Truncation truncate(const GermSet& e, std::size_t n);
Truncation truncate(const FiniteSet& e);

/// Exhaustive lambda(E,0,h) over the truncation. Pre: h > floor (unless
/// complete). Throws AnalysisError when the unknown region below the floor
/// could contain the winner.
Rat brute_lambda(const Truncation& t, const Rat& h);

/// Exact sup of lambda(h)/h with h sweeping all gap endpoints and endpoint
/// midpoints in (floor, b_1]; grid points the oracle must refuse are skipped.
Rat brute_profile_sup(const Truncation& t);

/// Exhaustive finite-window matching: assign each tau_n a gap left endpoint a
/// with tau_n <= a <= bound*tau_n. Deterministic pick: the smallest admissible
/// left endpoint. Returns 1-based gap indices, or nullopt when some tau_n has
/// no candidate.
std::optional<std::vector<std::size_t>> brute_match(const Truncation& t,
                                                    const std::vector<Rat>& tau,
                                                    const Rat& bound);

}  // namespace porolab
