#pragma once

#include "porolab/gapseq.hpp"
#include "porolab/porosity.hpp"
#include "porolab/set.hpp"
#include "porolab/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace porolab {

enum class TauProvenance { DyadicWitness, GapEndpoints, BlockLeftEndpoints, UserSupplied };

std::string to_string(TauProvenance p);

/// Almost-decreasing sequence of points of E \ {0} tending to 0 (a window of
/// one). Membership of every entry is checked exactly at construction.
class TestSequence {
public:
    /// One representative per nonempty dyadic shell [2^(1-j), 2^(2-j)): the
    /// largest block endpoint inside the shell (the shell bottom when a block
    /// covers the whole shell). Stops honestly when shell content would
    /// depend on the region below the representable floor.
    static TestSequence dyadic_witness(const GermSet& e, std::size_t depth);

    /// tau_n = m_{n+1}: right endpoints of the cover's gaps (slot tops).
    static TestSequence gap_right_endpoints(const GermSet& e, const GapSequence& cover,
                                            std::size_t depth);

    /// tau_n = block(n).lo.
    static TestSequence block_left_endpoints(const GermSet& e, std::size_t depth);

    static TestSequence user_supplied(const GermSet& e, std::vector<Rat> values);

    /// Every step-th entry; provenance is preserved.
    TestSequence subsampled(std::size_t step) const;

    const GermSet& base() const { return base_; }
    const std::vector<Rat>& values() const { return vals_; }
    Rat value(std::size_t n) const { return vals_[n - 1]; }  // 1-based
    std::size_t size() const { return vals_.size(); }
    TauProvenance provenance() const { return prov_; }
    std::size_t step() const { return step_; }
    std::size_t witness_index() const { return witness_; }
    std::string label() const;

private:
    TestSequence(GermSet base, std::vector<Rat> vals, TauProvenance prov);

    GermSet base_;
    std::vector<Rat> vals_;
    TauProvenance prov_;
    std::size_t step_ = 1;
    std::size_t witness_ = 1;
};

/// Weak equivalence evidence: c1 * a_n <= g_n <= c2 * a_n for n >= from_index,
/// exactly on the window; the verdict speaks to the asymptotic claim.
struct EquivVerdict {
    Rat c1, c2;
    std::size_t from_index = 1;
    TailVerdict verdict;
};

/// Order-and-bound check of tau against A's left endpoints: limsup a_n/tau_n < inf
/// and tau_n <= a_n eventually, with explicit window constants.
EquivVerdict check_asymp_gap(const GermSet& e, const TestSequence& tau, const GapSequence& a,
                             std::size_t depth);

/// Slot cover: [m_{k+1}, l_k] between consecutive cover gaps, plus the head
/// [m_1, inf) at k = 0. Slots are pairwise disjoint and cover E \ {0}.
struct SlotAssignment {
    std::vector<std::size_t> k;  // per tau index (1-based values; 0 = head slot)
    std::size_t cover_size = 0;
    std::size_t judged = 0;  // tau entries that landed in a proper slot within the window
};

struct TauPorosityResult {
    TailVerdict verdict;  // "E is tau-strongly porous"
    std::optional<GapSequence> matched;
    SlotAssignment slots;
    std::optional<Rat> ratio_tail_max;  // window tail max of a_n/tau_n
    ExtRat c_value = ExtRat::inf();     // limsup a_n/tau_n along the matching
    TailVerdict c_verdict;
};

/// Definition 1.4 via Corollary 2.4: slot-assign tau against the universal
/// cover (or the full gap stream when no certified universal exists), take
/// a_n = l_{k(n)}, and judge the matching conditions.
TauPorosityResult tau_strongly_porous(const GermSet& e, const TestSequence& tau,
                                      std::size_t depth,
                                      const UniversalityReport* uni = nullptr);

/// Scaled-window condition: (k tau_n, K tau_n) cap E = empty for n >= N1(K).
TailVerdict kK_condition(const GermSet& e, const TestSequence& tau, const Rat& k, const Rat& bigK,
                         std::size_t depth, std::size_t* n1_out = nullptr);

/// C(tau~) = limsup a_n/tau_n along the unique eventual matching.
std::pair<ExtRat, TailVerdict> C_of_tau(const GermSet& e, const TestSequence& tau,
                                        std::size_t depth,
                                        const UniversalityReport* uni = nullptr);

/// C_E = sup over tau of C(tau~); equals M(L~) for certified universal L~
/// (the universal sequence realizes the supremum), else the max over the
/// canonical tau family (flagged as an
/// empirical lower bound).
std::pair<ExtRat, TailVerdict> C_E(const GermSet& e, std::size_t depth);

/// Uniform strong porosity: C_E < inf, reporting the constant.
TailVerdict uniform_strong_porosity(const GermSet& e, std::size_t depth, ExtRat* c_out = nullptr);
TailVerdict uniform_strong_porosity(const FiniteSet& e);

/// The canonical tau family standing in for E~_0^d in property suites.
std::vector<TestSequence> canonical_tau_family(const GermSet& e, std::size_t depth,
                                               const UniversalityReport* uni = nullptr);

/// Greedy multiplicative clustering (window diagnostics and the empirical
/// certification path): split when the inter-block ratio exceeds
/// max(4, 2 * q_estimate), q_estimate = 2 * max completed cluster diameter.
struct Clustering {
    struct Cluster {
        std::size_t first_block, last_block;
        Rat lo, hi;
        Rat diameter;  // hi/lo
    };
    std::vector<Cluster> clusters;  // completed, descending
    Rat q_estimate{2};
    Rat threshold_final{4};
};
Clustering greedy_clusters(const GermSet& e, std::size_t depth);

struct CspCertificate {
    enum class Status { Certified, Refuted, TriviallyCsp, Empirical };
    Status status = Status::Empirical;
    std::size_t depth_used = 0;

    // certificate payload (Certified): E cap (0,t) subseteq W(q) = U (x/q, qx)
    std::optional<Rat> q;
    std::vector<Rat> centers;  // strictly decreasing window of x_n
    std::optional<Rat> t;
    TailVerdict centers_vanish;  // x_{n+1}/x_n -> 0

    ExtRat M = ExtRat::inf();
    TailVerdict M_verdict;

    std::string mechanism;
    std::optional<Rat> p_plus;  // refutation via p+ < 1 carries the exact value

    Clustering window_clusters;
    TailVerdict verdict;  // the claim "E is completely strongly porous"
};

std::string to_string(CspCertificate::Status s);

CspCertificate csp_certify(const GermSet& e, std::size_t depth);
CspCertificate csp_certify(const FiniteSet& e);
CspCertificate csp_certify(const AnySet& e, std::size_t depth);

/// Independent soundness pass over a certificate: every block below t must sit
/// inside some (x/q, q x). Walks blocks directly (a different route from the
/// slot-based construction). Returns true on pass; fills `why` on failure.
bool recheck_certificate(const GermSet& e, const CspCertificate& cert, std::size_t depth,
                         std::string* why = nullptr);

/// Sandwich half: the centers themselves form a point set included in E near 0.
bool recheck_centers_in_set(const GermSet& e, const CspCertificate& cert, std::string* why = nullptr);

struct HWitness {
    std::vector<Rat> h;              // h_n = m_{k(n)+1} from the slot assignment
    std::vector<Rat> lambda_ratio;   // exact lambda(E,0,h_n)/h_n window values
    EquivVerdict equiv_tau;          // tau~ =~ h~
    TailVerdict ratio_to_porosity;   // lambda(E,0,h_n)/h_n -> p+(E,0) = 1
};

/// Porosity-attaining scale sequence; requires a certified-CSP input.
HWitness h_set_witness(const GermSet& e, const TestSequence& tau, std::size_t depth);

struct GapFromH {
    GapSequence gaps;
    EquivVerdict tau_equiv_b;  // tau~ =~ b~
};

/// Largest free interval inside (0, h_n), expanded to its component.
GapFromH gap_from_h(const GermSet& e, const TestSequence& tau, const HWitness& h,
                    std::size_t depth);

}  // namespace porolab
