#pragma once

#include "porolab/rat.hpp"
#include "porolab/verdict.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace porolab {

/// What a declared generator structure implies about the tail of a positive
/// rational sequence. `certified` distinguishes structure-derived knowledge
/// from "the generator is open-ended, treat everything as empirical".
struct TailClass {
    enum class Kind {
        Constant,             // eventually constant
        FiniteRecurring,      // eventually ranges over a finite set, each value recurring forever
        EscapeToInfinity,     // v_n -> +inf
        VanishToZero,         // v_n -> 0
        RecurringPlusEscape,  // finite recurring set plus a subsequence -> +inf
        RecurringPlusVanish,  // finite recurring set plus a subsequence -> 0
        PowerFamily,          // recurring values {scale*base^k : k>=1}
        Unknown,
    };

    Kind kind = Kind::Unknown;
    bool certified = false;
    std::vector<Rat> recurring;  // Constant: {c}; *Recurring*: the sorted set
    Rat base = Rat(1);           // PowerFamily
    Rat scale = Rat(1);          // PowerFamily

    std::optional<ExtRat> limsup() const;
    std::optional<ExtRat> liminf() const;
    std::optional<ExtRat> limit() const;  // present only when it provably exists

    bool to_infinity() const { return certified && kind == Kind::EscapeToInfinity; }
    bool to_zero() const { return certified && kind == Kind::VanishToZero; }

    static TailClass constant(Rat c);
    static TailClass unknown() { return {}; }
};

/// Structured generator of an infinite positive rational sequence (1-based).
/// These are the DSL's `ratiomap` productions; every asymptotic certificate
/// in the artifact traces back to one of these shapes or to a decay law.
class RatioMap {
public:
    struct ListPrefix {
        std::vector<Rat> vals;  // nonempty; entries beyond repeat the last
        bool open_ended = false;  // user declared the continuation unknown ("...")
    };
    struct Cycle {
        std::vector<Rat> vals;  // nonempty, repeats forever
    };
    struct Pow {
        Rat base;  // values base^1, base^2, ...
    };
    struct DiagPow {
        Rat base;  // b; b^2,b; b^3,b^2,b; ... (each power recurs infinitely often)
    };
    struct Interleave {
        std::shared_ptr<const RatioMap> first, second;  // a1,b1,a2,b2,...
    };
    struct Shift {
        std::shared_ptr<const RatioMap> inner;
        std::size_t by;  // value(n) = inner(n + by)
    };
    struct Subsample {
        std::shared_ptr<const RatioMap> inner;
        std::size_t start, step;  // value(n) = inner(start + (n-1)*step)
    };

    using Node = std::variant<ListPrefix, Cycle, Pow, DiagPow, Interleave, Shift, Subsample>;

    RatioMap() : node_(ListPrefix{{Rat(1)}, false}) {}
    explicit RatioMap(Node n) : node_(std::move(n)) {}

    static RatioMap list(std::vector<Rat> vals, bool open_ended = false);
    static RatioMap cycle(std::vector<Rat> vals);
    static RatioMap pow(Rat base);
    static RatioMap diag_pow(Rat base);
    static RatioMap interleave(RatioMap a, RatioMap b);

    const Node& node() const { return node_; }

    Rat value(std::size_t n) const;  // n >= 1
    TailClass tail_class() const;

    /// Pointwise 1/v and c*v; structure-preserving.
    RatioMap inverse() const;
    RatioMap scaled(const Rat& c) const;
    RatioMap shifted(std::size_t by) const;
    RatioMap subsampled(std::size_t start, std::size_t step) const;

    /// Exact quantifiers over every generated value (prefixes included).
    bool all_greater(const Rat& bound) const;
    bool all_less(const Rat& bound) const;
    bool all_at_least(const Rat& bound) const;

    /// Certified supremum over all values, when structure determines one.
    std::optional<ExtRat> certified_sup() const;

    /// Supremum of the generated tail {value(n) : n >= from}. Generation
    /// semantics (open lists repeat their last entry), possibly conservative
    /// (an upper bound) for composite nodes.
    ExtRat tail_sup_generated(std::size_t from) const;

    /// Short structural descriptor for tags, e.g. "diagpow[2]".
    std::string brief() const;

    bool operator==(const RatioMap& o) const;

private:
    static TailClass subsample_class(const RatioMap& inner, std::size_t start, std::size_t step);

    Node node_;
    Rat scale_ = Rat(1);
};

enum class LimitTag { RatioToZero, RatioToConst, Unknown };

/// Decay law: generator of the strictly decreasing point sequence x_n -> 0.
class DecayLaw {
public:
    struct Geometric {
        Rat r;  // 0 < r < 1; x_n = r^n
    };
    struct PowerIter {
        Rat alpha;  // > 1
        Rat x0;     // 0 < x0 < 1; x_1 = x0, x_{n+1} = x_n^alpha (exact roots required)
    };
    struct Factorial {
        Rat scale;  // > 0; x_n = scale / n!
    };
    struct Table {
        RatioMap rho;  // x_1 = 1, x_{n+1} = rho(n) * x_n; all rho values in (0,1)
    };

    using Node = std::variant<Geometric, PowerIter, Factorial, Table>;

    explicit DecayLaw(Node n) : node_(std::move(n)) {}
    const Node& node() const { return node_; }

    Rat first() const;
    /// Next point from the current one; nullopt when exactness fails
    /// (rational alpha whose root does not exist in Q).
    std::optional<Rat> step(const Rat& x_n, std::size_t n) const;

    /// Ratio x_{n+1}/x_n given x_n (PowerIter needs the point itself).
    Rat rho(const Rat& x_n, std::size_t n) const;

    /// Asymptotic class of the ratio sequence {x_{n+1}/x_n}.
    TailClass rho_class() const;

    LimitTag limit_tag() const;
    std::optional<Rat> limit_const() const;  // for RatioToConst

    /// Power/Factorial: the ratio sequence is strictly decreasing (supports
    /// the RATIO_TO_ZERO certificate); exact check done by callers on windows.
    bool ratio_strictly_decreasing() const;

    std::string tag_string() const;

    bool operator==(const DecayLaw& o) const;

private:
    Node node_;
};

}  // namespace porolab
