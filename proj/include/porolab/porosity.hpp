#pragma once

#include "porolab/set.hpp"
#include "porolab/verdict.hpp"

#include <cstddef>
#include <vector>

namespace porolab {

struct LambdaResult {
    Rat value;
    bool exact = true;  // false: depth bound hit before the certainty cutoff (lower bound)
    std::size_t gaps_scanned = 0;
};

/// lambda(E, 0, h): length of the largest open subinterval of (0, h) that
/// contains no point of E. Exact with a certified early stop: once a block's
/// top falls below the best gap seen, nothing deeper can win.
LambdaResult lambda_gap(const GermSet& e, const Rat& h, std::size_t depth_bound);
LambdaResult lambda_gap(const FiniteSet& e, const Rat& h);
LambdaResult lambda_gap(const AnySet& e, const Rat& h, std::size_t depth_bound);

/// lambda plus the realizing interval (u, v) in (0, h).
struct LambdaArg {
    LambdaResult lambda;
    Rat u, v;                      // maximizing free interval, length = lambda.value
    std::size_t component_index;   // gap index whose component contains (u,v); 0 = head region
};
LambdaArg lambda_gap_argmax(const GermSet& e, const Rat& h, std::size_t depth_bound);

struct PorosityProfile {
    std::vector<Rat> ratios;  // r_n = (b_n - a_n)/b_n for gaps 1..N
    Rat window_max;           // max over the whole window (oracle cross-check target)
    Rat tail_max;             // max over the second half (leading-artifact free)
    TailVerdict limsup_is_one;
    std::size_t depth_used = 0;
};

PorosityProfile porosity_profile(const GermSet& e, std::size_t depth);

struct PorosityValue {
    Rat lower, upper;  // p+ bracket; lower == upper when exact
    bool exact = false;
    TailVerdict is_strongly_porous;  // verdict on "p+(E,0) = 1"
    std::size_t depth_used = 0;
};

PorosityValue porosity_at_zero(const GermSet& e, std::size_t depth);
/// 0 is not an accumulation point: lambda(h)/h -> 1 below the least point.
PorosityValue porosity_at_zero(const FiniteSet& e);
PorosityValue porosity_at_zero(const AnySet& e, std::size_t depth);

}  // namespace porolab
