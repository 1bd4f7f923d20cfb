#pragma once

#include "porolab/law.hpp"
#include "porolab/rat.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace porolab {

/// Closed block [lo, hi] with 0 < lo <= hi; a single point is lo == hi.
struct Block {
    Rat lo, hi;

    bool degenerate() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    friend bool operator==(const Block& a, const Block& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Open gap (a, b): a connected component of Ext E with a > 0.
struct Gap {
    Rat a, b;

    Rat length() const { return b - a; }
    Rat ratio() const { return b / a; }  // the b/a the whole theory runs on
    friend bool operator==(const Gap& x, const Gap& y) { return x.a == y.a && x.b == y.b; }
};

/// Parsed, validated set definition (the DSL's `set NAME { ... }`).
struct SetSpec {
    struct Points {
        DecayLaw law;
    };
    struct Thicken {
        DecayLaw law;
        Rat q;  // > 1
    };
    struct Bands {
        DecayLaw law;
    };
    struct ExplicitBlocks {
        std::vector<Block> blocks;  // descending, pairwise disjoint
    };
    struct RatioGaps {
        RatioMap gap_ratio;    // values > 1
        RatioMap block_ratio;  // values >= 1 (1 = degenerate point blocks)
        Rat seed;              // hi endpoint of the first block
    };
    using Shape = std::variant<ExplicitBlocks, Points, Thicken, Bands, RatioGaps>;

    std::string name;
    Shape shape;
    std::size_t default_depth = 64;
    bool origin_in_set = true;

    bool operator==(const SetSpec& o) const;
};

struct ElabOptions {
    std::size_t m0_scan_bound = 10000;
    std::size_t bit_budget = 0;  // 0 = default (POROLAB_BIT_BUDGET env or 2^20)
};

std::size_t default_bit_budget();

/// Lazy strictly-decreasing stream of disjoint closed blocks accumulating at
/// 0. Immutable and safe to share across threads; the block cache is
/// internally synchronized.
class GermSet {
public:
    /// 1-based block access; throws AnalysisError past the representable depth
    /// (ask usable_depth first).
    Block block(std::size_t n) const;

    /// Component of Ext E between blocks n+1 and n: (block(n+1).hi, block(n).lo).
    Gap gap(std::size_t n) const;

    /// Deepest index <= request whose block fits the bit budget.
    std::size_t usable_depth(std::size_t request) const;

    Rat gap_ratio(std::size_t n) const { return gap(n).ratio(); }
    /// l_n / m_{n+1}: left end of gap n over right end of gap n+1.
    Rat consec_ratio(std::size_t n) const { return gap(n).a / gap(n + 1).b; }
    Rat diameter(std::size_t n) const { return block(n).hi / block(n).lo; }

    /// Structure-derived tail classes (certified asymptotics).
    const TailClass& gap_ratio_class() const;
    const TailClass& consec_class() const;
    const TailClass& diameter_class() const;

    const std::optional<DecayLaw>& law_meta() const;
    const SetSpec& spec() const;
    bool origin_in_set() const;
    const std::string& name() const;

    /// Short provenance string used in verdict law_tag fields.
    std::string structure_tag() const;

    /// Exact membership of x in E within the representable window. Returns
    /// nullopt when x lies below the deepest computed block (undecidable here).
    std::optional<bool> contains(const Rat& x, std::size_t depth_hint = 0) const;

    /// Exact ratio-monotonicity check backing RATIO_TO_ZERO certificates:
    /// block-lo consecutive ratios strictly decreasing over the window.
    bool ratio_monotone_on_window(std::size_t depth) const;

private:
    friend std::variant<GermSet, class FiniteSet> elaborate(const SetSpec&, const ElabOptions&);
    struct Impl;
    explicit GermSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Finitely many blocks: 0 is not an accumulation point.
class FiniteSet {
public:
    FiniteSet(std::vector<Block> blocks_desc, bool origin_in_set, std::string name = {});

    const std::vector<Block>& blocks() const { return blocks_; }  // descending
    bool origin_in_set() const { return origin_; }
    const std::string& name() const { return name_; }
    bool contains(const Rat& x) const;
    bool empty() const { return blocks_.empty(); }

private:
    std::vector<Block> blocks_;
    bool origin_;
    std::string name_;
};

using AnySet = std::variant<GermSet, FiniteSet>;

/// Build the set a spec denotes. Throws ElaborationError when an invariant
/// cannot be established within the scan bound (e.g. thicken's m0).
AnySet elaborate(const SetSpec& spec, const ElabOptions& opts = {});

inline Gap gap_at(const GermSet& e, std::size_t n) { return e.gap(n); }

enum class OriginClass { AccumulatesAtZero, DoesNotAccumulate };

inline OriginClass classify_origin(const AnySet& e) {
    return std::holds_alternative<GermSet>(e) ? OriginClass::AccumulatesAtZero
                                              : OriginClass::DoesNotAccumulate;
}

std::string shape_name(const SetSpec::Shape& s);

}  // namespace porolab
