#pragma once

#include "porolab/porosity.hpp"
#include "porolab/set.hpp"
#include "porolab/verdict.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace porolab {

/// How a gap subsequence was built; certified asymptotics dispatch on this.
struct GapSeqDescriptor {
    enum class Kind { All, Arithmetic, Filtered, Explicit };
    Kind kind = Kind::Explicit;
    std::size_t start = 1, step = 1;  // Arithmetic: source indices start, start+step, ...
    Rat threshold;                    // Filtered: entries with ratio > threshold
};

/// Window of a sequence of connected components of Ext E, each entry verified
/// maximal against the block stream. Left endpoints of stream-derived
/// sequences are strictly decreasing by the germ invariant.
class GapSequence {
public:
    static GapSequence all_gaps(const GermSet& e, std::size_t depth);
    static GapSequence arithmetic(const GermSet& e, std::size_t start, std::size_t step,
                                  std::size_t depth);
    /// Entries with ratio b/a > c, in stream (decreasing-a) order.
    static GapSequence filtered(const GermSet& e, const Rat& c, std::size_t depth);
    /// Entries may repeat; each must equal gap_at(e, k) for some k (hard error
    /// otherwise — component maximality is checked exactly).
    static GapSequence explicit_entries(const GermSet& e, std::vector<Gap> entries,
                                        std::size_t search_depth);

    const GermSet& base() const { return base_; }
    std::size_t size() const { return entries_.size(); }
    const Gap& entry(std::size_t k) const { return entries_[k - 1]; }          // 1-based
    std::size_t source_index(std::size_t k) const { return source_[k - 1]; }  // E gap index
    std::size_t horizon() const { return horizon_; }  // deepest E gap index examined
    const GapSeqDescriptor& descriptor() const { return desc_; }

    const TailVerdict& almost_decreasing() const { return almost_dec_; }
    const TailVerdict& almost_strictly_decreasing() const { return almost_sdec_; }
    std::size_t monotone_witness() const { return witness_; }

private:
    friend GapSequence strictify(const GapSequence&);
    GapSequence(GermSet base, GapSeqDescriptor desc) : base_(std::move(base)), desc_(desc) {}
    void classify();

    GermSet base_;
    std::vector<Gap> entries_;
    std::vector<std::size_t> source_;
    std::size_t horizon_ = 0;
    GapSeqDescriptor desc_;
    TailVerdict almost_dec_, almost_sdec_;
    std::size_t witness_ = 1;
};

/// Verdict on S being a member of I~_E: a_n -> 0 and b_n/a_n -> infinity.
TailVerdict is_IE_member(const GermSet& e, const GapSequence& s, std::size_t depth);

/// Index map realizing A <= L: entry(N1 + i) of A equals entry(f[i]) of L.
struct Embedding {
    std::size_t N1 = 1;
    std::vector<std::size_t> f;  // 1-based positions into L's window
};

struct PrecedesResult {
    std::optional<Embedding> embedding;
    TailVerdict verdict;
};

/// A <= L: a tail of A re-indexes into L (matching components exactly).
/// Monotone greedy matching is complete because both left-endpoint sequences
/// are almost decreasing and components are pairwise disjoint.
PrecedesResult precedes(const GapSequence& a, const GapSequence& l, std::size_t depth);

/// A == L iff A <= L and L <= A.
TailVerdict equiv(const GapSequence& a, const GapSequence& l, std::size_t depth);

/// Strictification: subsequence with strictly decreasing left endpoints; keeps the
/// first entry at the monotone witness and every later strict decrease.
GapSequence strictify(const GapSequence& l);

/// M(L~) = limsup l_n / m_{n+1}; certified via declared structure when the
/// descriptor allows, window tail statistic otherwise.
std::pair<ExtRat, TailVerdict> M_of(const GapSequence& l, std::size_t depth);

struct UniversalityReport {
    TailVerdict verdict;  // "a universal element of (I~_E^d, <=) exists"
    std::optional<Rat> c;
    /// Window evidence for the quantifier schedule: K -> t such that every
    /// window gap with a < t and ratio > c had ratio > K.
    std::vector<std::pair<Rat, Rat>> t_schedule;
    ExtRat M_value = ExtRat::inf();
    TailVerdict M_verdict;
    std::optional<GapSequence> universal_sequence;
    std::string mechanism;
    struct CandidateStats {
        Rat c;
        std::size_t below = 0, above = 0;
        std::optional<Rat> max_below, min_above;
    };
    std::vector<CandidateStats> per_c;
    std::size_t depth_used = 0;
};

/// Universality criterion: exists c>1 such that for every K>1 there is t>0
/// with (a<t and b/a>c) => b/a>K for components (a,b).
UniversalityReport universality_certificate(const GermSet& e, std::size_t depth,
                                            std::vector<Rat> c_grid = {});

/// Same underlying set (elaboration is deterministic, so spec equality is
/// object identity for analysis purposes).
inline bool same_set(const GermSet& a, const GermSet& b) { return a.spec() == b.spec(); }

}  // namespace porolab
