#pragma once

#include "porolab/rat.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace porolab {

/// Three-valued answer to an asymptotic claim. Certified statuses are backed
/// by declared generator structure plus exact window checks; empirical ones
/// only describe the inspected finite window.
enum class VerdictStatus {
    CertifiedTrue,
    CertifiedFalse,
    EmpiricalTrue,
    EmpiricalFalse,
    Inconclusive,
};

std::string to_string(VerdictStatus s);

struct TailVerdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::size_t depth = 0;  // indices of the window the evidence covers
    std::string law_tag;    // certification source ("" when empirical)
    std::optional<Rat> tail_stat;
    std::optional<std::size_t> witness_index;
    std::string note;

    bool certified() const {
        return status == VerdictStatus::CertifiedTrue || status == VerdictStatus::CertifiedFalse;
    }
    bool holds() const {
        return status == VerdictStatus::CertifiedTrue || status == VerdictStatus::EmpiricalTrue;
    }

    static TailVerdict certified(bool truth, std::size_t depth, std::string tag,
                                 std::string note = {}) {
        TailVerdict v;
        v.status = truth ? VerdictStatus::CertifiedTrue : VerdictStatus::CertifiedFalse;
        v.depth = depth;
        v.law_tag = std::move(tag);
        v.note = std::move(note);
        return v;
    }
    static TailVerdict empirical(bool truth, std::size_t depth, std::string note = {}) {
        TailVerdict v;
        v.status = truth ? VerdictStatus::EmpiricalTrue : VerdictStatus::EmpiricalFalse;
        v.depth = depth;
        v.note = std::move(note);
        return v;
    }
    static TailVerdict inconclusive(std::size_t depth, std::string note = {}) {
        TailVerdict v;
        v.depth = depth;
        v.note = std::move(note);
        return v;
    }

    /// Logical AND: certified-false dominates, then empirical-false, then the
    /// weakest positive evidence level.
    static TailVerdict conjoin(const TailVerdict& a, const TailVerdict& b);
};

inline std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::CertifiedTrue: return "certified_true";
        case VerdictStatus::CertifiedFalse: return "certified_false";
        case VerdictStatus::EmpiricalTrue: return "empirical_true";
        case VerdictStatus::EmpiricalFalse: return "empirical_false";
        case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline TailVerdict TailVerdict::conjoin(const TailVerdict& a, const TailVerdict& b) {
    using S = VerdictStatus;
    auto pick = [](const TailVerdict& x, const TailVerdict& y, S s) {
        return x.status == s ? x : y;
    };
    for (S s : {S::CertifiedFalse, S::EmpiricalFalse, S::Inconclusive}) {
        if (a.status == s || b.status == s) return pick(a, b, s);
    }
    // both are some flavor of true; the weaker evidence wins
    if (a.status == S::EmpiricalTrue) return a;
    if (b.status == S::EmpiricalTrue) return b;
    TailVerdict v = a;
    v.depth = a.depth < b.depth ? a.depth : b.depth;
    if (!b.law_tag.empty() && b.law_tag != a.law_tag)
        v.law_tag = a.law_tag.empty() ? b.law_tag : a.law_tag + "&" + b.law_tag;
    return v;
}

}  // namespace porolab
