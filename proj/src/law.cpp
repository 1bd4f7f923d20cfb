#include "porolab/law.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace porolab {

namespace {

std::vector<Rat> sorted_unique(std::vector<Rat> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

TailClass scale_class(TailClass c, const Rat& s) {
    if (s == Rat(1)) return c;
    for (auto& v : c.recurring) v = v * s;
    c.scale = c.scale * s;
    return c;
}

long to_long(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw std::invalid_argument(std::string(what) + ": out of range");
    return z.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// TailClass

TailClass TailClass::constant(Rat c) {
    TailClass t;
    t.kind = Kind::Constant;
    t.certified = true;
    t.recurring = {std::move(c)};
    return t;
}

std::optional<ExtRat> TailClass::limsup() const {
    if (!certified) return std::nullopt;
    switch (kind) {
        case Kind::Constant: return ExtRat::finite(recurring.front());
        case Kind::FiniteRecurring:
        case Kind::RecurringPlusVanish: return ExtRat::finite(recurring.back());
        case Kind::EscapeToInfinity:
        case Kind::RecurringPlusEscape: return ExtRat::inf();
        case Kind::VanishToZero: return ExtRat::finite(Rat(0));
        case Kind::PowerFamily:
            if (base > Rat(1)) return ExtRat::inf();
            return ExtRat::finite(scale * base);  // powers of base <= 1 peak at k = 1
        case Kind::Unknown: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<ExtRat> TailClass::liminf() const {
    if (!certified) return std::nullopt;
    switch (kind) {
        case Kind::Constant: return ExtRat::finite(recurring.front());
        case Kind::FiniteRecurring:
        case Kind::RecurringPlusEscape: return ExtRat::finite(recurring.front());
        case Kind::EscapeToInfinity: return ExtRat::inf();
        case Kind::VanishToZero:
        case Kind::RecurringPlusVanish: return ExtRat::finite(Rat(0));
        case Kind::PowerFamily:
            if (base > Rat(1)) return ExtRat::finite(scale * base);
            return ExtRat::finite(Rat(0));
        case Kind::Unknown: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<ExtRat> TailClass::limit() const {
    auto hi = limsup(), lo = liminf();
    if (hi && lo && *hi == *lo) return hi;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// RatioMap factories

RatioMap RatioMap::list(std::vector<Rat> vals, bool open_ended) {
    if (vals.empty()) throw std::invalid_argument("ratio map: empty list");
    for (const auto& v : vals)
        if (!v.positive()) throw std::invalid_argument("ratio map: values must be positive");
    return RatioMap(ListPrefix{std::move(vals), open_ended});
}

RatioMap RatioMap::cycle(std::vector<Rat> vals) {
    if (vals.empty()) throw std::invalid_argument("ratio map: empty cycle");
    for (const auto& v : vals)
        if (!v.positive()) throw std::invalid_argument("ratio map: values must be positive");
    return RatioMap(Cycle{std::move(vals)});
}

RatioMap RatioMap::pow(Rat base) {
    if (!base.positive()) throw std::invalid_argument("ratio map: pow base must be positive");
    return RatioMap(Pow{std::move(base)});
}

RatioMap RatioMap::diag_pow(Rat base) {
    if (!base.positive()) throw std::invalid_argument("ratio map: diagpow base must be positive");
    return RatioMap(DiagPow{std::move(base)});
}

RatioMap RatioMap::interleave(RatioMap a, RatioMap b) {
    return RatioMap(Interleave{std::make_shared<const RatioMap>(std::move(a)),
                               std::make_shared<const RatioMap>(std::move(b))});
}

// ---------------------------------------------------------------------------
// Value generation

Rat RatioMap::value(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("ratio map: indices are 1-based");
    Rat raw = std::visit(
        [n](const auto& node) -> Rat {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                return n <= node.vals.size() ? node.vals[n - 1] : node.vals.back();
            } else if constexpr (std::is_same_v<T, Cycle>) {
                return node.vals[(n - 1) % node.vals.size()];
            } else if constexpr (std::is_same_v<T, Pow>) {
                return node.base.pow(static_cast<long>(n));
            } else if constexpr (std::is_same_v<T, DiagPow>) {
                // diagonal blocks: block k holds base^k, base^(k-1), ..., base^1
                std::size_t k = 1, total = 1;
                while (total < n) {
                    ++k;
                    total += k;
                }
                std::size_t pos_in_block = n - (total - k);  // 1-based
                return node.base.pow(static_cast<long>(k - pos_in_block + 1));
            } else if constexpr (std::is_same_v<T, Interleave>) {
                return n % 2 == 1 ? node.first->value((n + 1) / 2) : node.second->value(n / 2);
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->value(n + node.by);
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->value(node.start + (n - 1) * node.step);
            }
        },
        node_);
    return scale_ == Rat(1) ? raw : scale_ * raw;
}

// ---------------------------------------------------------------------------
// Tail classification

namespace {

struct Features {
    std::vector<Rat> recurring;
    bool escape = false;
    bool vanish = false;
    bool ok = false;  // certified and representable
};

Features features_of(const TailClass& c) {
    Features f;
    if (!c.certified) return f;
    using K = TailClass::Kind;
    switch (c.kind) {
        case K::Constant:
        case K::FiniteRecurring: f.recurring = c.recurring; f.ok = true; break;
        case K::EscapeToInfinity: f.escape = true; f.ok = true; break;
        case K::VanishToZero: f.vanish = true; f.ok = true; break;
        case K::RecurringPlusEscape: f.recurring = c.recurring; f.escape = true; f.ok = true; break;
        case K::RecurringPlusVanish: f.recurring = c.recurring; f.vanish = true; f.ok = true; break;
        case K::PowerFamily:
        case K::Unknown: break;
    }
    return f;
}

TailClass from_features(const Features& f) {
    TailClass t;
    if (!f.ok) return t;
    t.certified = true;
    t.recurring = sorted_unique(f.recurring);
    using K = TailClass::Kind;
    if (f.escape && f.vanish) return TailClass::unknown();
    if (t.recurring.empty()) {
        if (f.escape) t.kind = K::EscapeToInfinity;
        else if (f.vanish) t.kind = K::VanishToZero;
        else return TailClass::unknown();
        return t;
    }
    if (f.escape) t.kind = K::RecurringPlusEscape;
    else if (f.vanish) t.kind = K::RecurringPlusVanish;
    else t.kind = t.recurring.size() == 1 ? K::Constant : K::FiniteRecurring;
    return t;
}

}  // namespace

TailClass RatioMap::tail_class() const {
    TailClass raw = std::visit(
        [this](const auto& node) -> TailClass {
            using T = std::decay_t<decltype(node)>;
            using K = TailClass::Kind;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                if (node.open_ended) return TailClass::unknown();
                return TailClass::constant(node.vals.back());
            } else if constexpr (std::is_same_v<T, Cycle>) {
                auto uniq = sorted_unique(node.vals);
                if (uniq.size() == 1) return TailClass::constant(uniq.front());
                TailClass t;
                t.kind = K::FiniteRecurring;
                t.certified = true;
                t.recurring = std::move(uniq);
                return t;
            } else if constexpr (std::is_same_v<T, Pow>) {
                TailClass t;
                t.certified = true;
                if (node.base > Rat(1)) t.kind = K::EscapeToInfinity;
                else if (node.base < Rat(1)) t.kind = K::VanishToZero;
                else return TailClass::constant(Rat(1));
                return t;
            } else if constexpr (std::is_same_v<T, DiagPow>) {
                if (node.base == Rat(1)) return TailClass::constant(Rat(1));
                TailClass t;
                t.kind = K::PowerFamily;
                t.certified = true;
                t.base = node.base;
                t.scale = Rat(1);
                return t;
            } else if constexpr (std::is_same_v<T, Interleave>) {
                Features a = features_of(node.first->tail_class());
                Features b = features_of(node.second->tail_class());
                if (!a.ok || !b.ok) return TailClass::unknown();
                Features u;
                u.ok = true;
                u.recurring = a.recurring;
                u.recurring.insert(u.recurring.end(), b.recurring.begin(), b.recurring.end());
                u.escape = a.escape || b.escape;
                u.vanish = a.vanish || b.vanish;
                return from_features(u);
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->tail_class();  // shift-invariant
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return subsample_class(*node.inner, node.start, node.step);
            }
        },
        node_);
    return scale_class(std::move(raw), scale_);
}

TailClass RatioMap::subsample_class(const RatioMap& inner, std::size_t start, std::size_t step) {
    TailClass ic = inner.tail_class();
    using K = TailClass::Kind;
    // subsequences inherit genuine limits
    if (ic.certified &&
        (ic.kind == K::Constant || ic.kind == K::EscapeToInfinity || ic.kind == K::VanishToZero))
        return ic;

    // structural cases
    if (const auto* cyc = std::get_if<Cycle>(&inner.node_)) {
        std::size_t p = cyc->vals.size();
        std::size_t g = std::gcd(step, p);
        std::vector<Rat> picked;
        for (std::size_t k = 0; k < p / g; ++k)
            picked.push_back(inner.value(start + k * step));
        return RatioMap::cycle(std::move(picked)).tail_class();
    }
    if (const auto* il = std::get_if<Interleave>(&inner.node_); il && step == 2) {
        // a fixed parity picks one component (up to an index shift)
        TailClass c = start % 2 == 1 ? il->first->tail_class() : il->second->tail_class();
        return scale_class(std::move(c), inner.scale_);
    }
    if (const auto* sh = std::get_if<Shift>(&inner.node_)) {
        TailClass c = subsample_class(*sh->inner, start + sh->by, step);
        return scale_class(std::move(c), inner.scale_);
    }
    if (const auto* ss = std::get_if<Subsample>(&inner.node_)) {
        TailClass c =
            subsample_class(*ss->inner, ss->start + (start - 1) * ss->step, step * ss->step);
        return scale_class(std::move(c), inner.scale_);
    }
    return TailClass::unknown();
}

// ---------------------------------------------------------------------------
// Structure-preserving transforms

RatioMap RatioMap::inverse() const {
    RatioMap r = std::visit(
        [](const auto& node) -> RatioMap {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                std::vector<Rat> v;
                v.reserve(node.vals.size());
                for (const auto& x : node.vals) v.push_back(x.inverse());
                return RatioMap(ListPrefix{std::move(v), node.open_ended});
            } else if constexpr (std::is_same_v<T, Cycle>) {
                std::vector<Rat> v;
                v.reserve(node.vals.size());
                for (const auto& x : node.vals) v.push_back(x.inverse());
                return RatioMap(Cycle{std::move(v)});
            } else if constexpr (std::is_same_v<T, Pow>) {
                return RatioMap(Pow{node.base.inverse()});
            } else if constexpr (std::is_same_v<T, DiagPow>) {
                return RatioMap(DiagPow{node.base.inverse()});
            } else if constexpr (std::is_same_v<T, Interleave>) {
                return RatioMap(
                    Interleave{std::make_shared<const RatioMap>(node.first->inverse()),
                               std::make_shared<const RatioMap>(node.second->inverse())});
            } else if constexpr (std::is_same_v<T, Shift>) {
                return RatioMap(
                    Shift{std::make_shared<const RatioMap>(node.inner->inverse()), node.by});
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return RatioMap(Subsample{std::make_shared<const RatioMap>(node.inner->inverse()),
                                          node.start, node.step});
            }
        },
        node_);
    r.scale_ = scale_.inverse();
    return r;
}

RatioMap RatioMap::scaled(const Rat& c) const {
    if (!c.positive()) throw std::invalid_argument("ratio map: scale must be positive");
    RatioMap r = *this;
    r.scale_ = r.scale_ * c;
    return r;
}

RatioMap RatioMap::shifted(std::size_t by) const {
    if (by == 0) return *this;
    return RatioMap(Shift{std::make_shared<const RatioMap>(*this), by});
}

RatioMap RatioMap::subsampled(std::size_t start, std::size_t step) const {
    if (start == 0 || step == 0) throw std::invalid_argument("ratio map: bad subsample");
    if (start == 1 && step == 1) return *this;
    return RatioMap(Subsample{std::make_shared<const RatioMap>(*this), start, step});
}

// ---------------------------------------------------------------------------
// Exact quantifiers

bool RatioMap::all_greater(const Rat& bound) const {
    Rat b = bound / scale_;
    return std::visit(
        [&b](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix> || std::is_same_v<T, Cycle>) {
                for (const auto& v : node.vals)
                    if (!(v > b)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Pow> || std::is_same_v<T, DiagPow>) {
                // value set is {base^k : k >= 1}
                if (node.base > Rat(1)) return node.base > b;        // min attained at k=1
                if (node.base == Rat(1)) return Rat(1) > b;
                return !b.positive();                                // values accumulate at 0
            } else if constexpr (std::is_same_v<T, Interleave>) {
                Rat orig = b;  // children carry their own scales
                return node.first->all_greater(orig) && node.second->all_greater(orig);
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->all_greater(b);  // superset of shifted values
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->all_greater(b);
            }
        },
        node_);
}

bool RatioMap::all_less(const Rat& bound) const {
    Rat b = bound / scale_;
    return std::visit(
        [&b](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix> || std::is_same_v<T, Cycle>) {
                for (const auto& v : node.vals)
                    if (!(v < b)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Pow> || std::is_same_v<T, DiagPow>) {
                if (node.base > Rat(1)) return false;  // unbounded above
                if (node.base == Rat(1)) return Rat(1) < b;
                return node.base < b;                  // max attained at k=1
            } else if constexpr (std::is_same_v<T, Interleave>) {
                Rat orig = b;
                return node.first->all_less(orig) && node.second->all_less(orig);
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->all_less(b);
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->all_less(b);
            }
        },
        node_);
}

bool RatioMap::all_at_least(const Rat& bound) const {
    Rat b = bound / scale_;
    return std::visit(
        [&b](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix> || std::is_same_v<T, Cycle>) {
                for (const auto& v : node.vals)
                    if (v < b) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Pow> || std::is_same_v<T, DiagPow>) {
                if (node.base >= Rat(1)) return node.base >= b;  // min attained at k=1
                return !b.positive();                            // values accumulate at 0
            } else if constexpr (std::is_same_v<T, Interleave>) {
                Rat orig = b;
                return node.first->all_at_least(orig) && node.second->all_at_least(orig);
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->all_at_least(b);
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->all_at_least(b);
            }
        },
        node_);
}

ExtRat RatioMap::tail_sup_generated(std::size_t from) const {
    ExtRat sup = std::visit(
        [from](const auto& node) -> ExtRat {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                Rat best = node.vals.back();  // the repeated tail entry
                for (std::size_t i = from; i <= node.vals.size(); ++i)
                    if (node.vals[i - 1] > best) best = node.vals[i - 1];
                return ExtRat::finite(best);
            } else if constexpr (std::is_same_v<T, Cycle>) {
                return ExtRat::finite(*std::max_element(node.vals.begin(), node.vals.end()));
            } else if constexpr (std::is_same_v<T, Pow>) {
                if (node.base > Rat(1)) return ExtRat::inf();
                return ExtRat::finite(node.base.pow(static_cast<long>(from)));
            } else if constexpr (std::is_same_v<T, DiagPow>) {
                if (node.base > Rat(1)) return ExtRat::inf();
                return ExtRat::finite(node.base);  // base^1 recurs beyond any index
            } else if constexpr (std::is_same_v<T, Interleave>) {
                std::size_t half = from / 2 == 0 ? 1 : from / 2;
                ExtRat a = node.first->tail_sup_generated(half);
                ExtRat b = node.second->tail_sup_generated(half);
                return a < b ? b : a;
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->tail_sup_generated(from + node.by);
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->tail_sup_generated(node.start + (from - 1) * node.step);
            }
        },
        node_);
    if (sup.infinite) return sup;
    return ExtRat::finite(sup.value * scale_);
}

std::string RatioMap::brief() const {
    std::string body = std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                return node.open_ended ? std::string("list...") : std::string("list");
            } else if constexpr (std::is_same_v<T, Cycle>) {
                std::string s = "cycle[";
                for (std::size_t i = 0; i < node.vals.size(); ++i)
                    s += (i ? "," : "") + node.vals[i].str();
                return s + "]";
            } else if constexpr (std::is_same_v<T, Pow>) {
                return "pow[" + node.base.str() + "]";
            } else if constexpr (std::is_same_v<T, DiagPow>) {
                return "diagpow[" + node.base.str() + "]";
            } else if constexpr (std::is_same_v<T, Interleave>) {
                return "interleave[" + node.first->brief() + ";" + node.second->brief() + "]";
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->brief();
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->brief() + "'";
            }
        },
        node_);
    return body;
}

std::optional<ExtRat> RatioMap::certified_sup() const {
    auto sup = std::visit(
        [](const auto& node) -> std::optional<ExtRat> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ListPrefix>) {
                if (node.open_ended) return std::nullopt;
                return ExtRat::finite(*std::max_element(node.vals.begin(), node.vals.end()));
            } else if constexpr (std::is_same_v<T, Cycle>) {
                return ExtRat::finite(*std::max_element(node.vals.begin(), node.vals.end()));
            } else if constexpr (std::is_same_v<T, Pow> || std::is_same_v<T, DiagPow>) {
                if (node.base > Rat(1)) return ExtRat::inf();
                return ExtRat::finite(node.base == Rat(1) ? Rat(1) : node.base);
            } else if constexpr (std::is_same_v<T, Interleave>) {
                auto a = node.first->certified_sup(), b = node.second->certified_sup();
                if (!a || !b) return std::nullopt;
                return *a < *b ? *b : *a;
            } else if constexpr (std::is_same_v<T, Shift>) {
                return node.inner->certified_sup();
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return node.inner->certified_sup();
            }
        },
        node_);
    if (!sup) return std::nullopt;
    if (sup->infinite) return sup;
    return ExtRat::finite(sup->value * scale_);
}

bool RatioMap::operator==(const RatioMap& o) const {
    if (!(scale_ == o.scale_)) return false;
    if (node_.index() != o.node_.index()) return false;
    return std::visit(
        [&o](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(o.node_);
            if constexpr (std::is_same_v<T, ListPrefix>) {
                return a.open_ended == b.open_ended && a.vals == b.vals;
            } else if constexpr (std::is_same_v<T, Cycle>) {
                return a.vals == b.vals;
            } else if constexpr (std::is_same_v<T, Pow> || std::is_same_v<T, DiagPow>) {
                return a.base == b.base;
            } else if constexpr (std::is_same_v<T, Interleave>) {
                return *a.first == *b.first && *a.second == *b.second;
            } else if constexpr (std::is_same_v<T, Shift>) {
                return a.by == b.by && *a.inner == *b.inner;
            } else {
                static_assert(std::is_same_v<T, Subsample>);
                return a.start == b.start && a.step == b.step && *a.inner == *b.inner;
            }
        },
        node_);
}

// ---------------------------------------------------------------------------
// DecayLaw

Rat DecayLaw::first() const {
    return std::visit(
        [](const auto& n) -> Rat {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Geometric>) return n.r;
            else if constexpr (std::is_same_v<T, PowerIter>) return n.x0;
            else if constexpr (std::is_same_v<T, Factorial>) return n.scale;
            else return Rat(1);  // Table: x_1 = 1 by convention
        },
        node_);
}

std::optional<Rat> DecayLaw::step(const Rat& x_n, std::size_t n) const {
    return std::visit(
        [&x_n, n](const auto& node) -> std::optional<Rat> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Geometric>) {
                return x_n * node.r;
            } else if constexpr (std::is_same_v<T, PowerIter>) {
                long p = to_long(node.alpha.num(), "alpha");
                long q = to_long(node.alpha.den(), "alpha");
                Rat powered = x_n.pow(p);
                if (q == 1) return powered;
                return powered.nth_root(static_cast<unsigned long>(q));
            } else if constexpr (std::is_same_v<T, Factorial>) {
                return x_n / Rat(static_cast<long>(n) + 1);
            } else {
                static_assert(std::is_same_v<T, Table>);
                return x_n * node.rho.value(n);
            }
        },
        node_);
}

Rat DecayLaw::rho(const Rat& x_n, std::size_t n) const {
    return std::visit(
        [&, this](const auto& node) -> Rat {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Geometric>) {
                return node.r;
            } else if constexpr (std::is_same_v<T, PowerIter>) {
                auto nx = step(x_n, n);
                if (!nx) throw std::domain_error("power law: inexact root");
                return *nx / x_n;
            } else if constexpr (std::is_same_v<T, Factorial>) {
                return Rat(1, static_cast<long>(n) + 1);
            } else {
                static_assert(std::is_same_v<T, Table>);
                return node.rho.value(n);
            }
        },
        node_);
}

TailClass DecayLaw::rho_class() const {
    return std::visit(
        [](const auto& node) -> TailClass {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Geometric>) {
                return TailClass::constant(node.r);
            } else if constexpr (std::is_same_v<T, PowerIter> || std::is_same_v<T, Factorial>) {
                TailClass t;
                t.kind = TailClass::Kind::VanishToZero;
                t.certified = true;
                return t;
            } else {
                static_assert(std::is_same_v<T, Table>);
                return node.rho.tail_class();
            }
        },
        node_);
}

LimitTag DecayLaw::limit_tag() const {
    TailClass c = rho_class();
    if (c.to_zero()) return LimitTag::RatioToZero;
    if (c.certified && c.kind == TailClass::Kind::Constant) return LimitTag::RatioToConst;
    return LimitTag::Unknown;
}

std::optional<Rat> DecayLaw::limit_const() const {
    TailClass c = rho_class();
    if (c.certified && c.kind == TailClass::Kind::Constant) return c.recurring.front();
    return std::nullopt;
}

bool DecayLaw::ratio_strictly_decreasing() const {
    return std::holds_alternative<PowerIter>(node_) || std::holds_alternative<Factorial>(node_);
}

std::string DecayLaw::tag_string() const {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Geometric>) {
                return "geometric:ratio_to_const(" + node.r.str() + ")";
            } else if constexpr (std::is_same_v<T, PowerIter>) {
                return "power:ratio_to_zero";
            } else if constexpr (std::is_same_v<T, Factorial>) {
                return "factorial:ratio_to_zero";
            } else {
                return "ratio_table";
            }
        },
        node_);
}

bool DecayLaw::operator==(const DecayLaw& o) const {
    if (node_.index() != o.node_.index()) return false;
    return std::visit(
        [&o](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(o.node_);
            if constexpr (std::is_same_v<T, Geometric>) return a.r == b.r;
            else if constexpr (std::is_same_v<T, PowerIter>) return a.alpha == b.alpha && a.x0 == b.x0;
            else if constexpr (std::is_same_v<T, Factorial>) return a.scale == b.scale;
            else return a.rho == b.rho;
        },
        node_);
}

}  // namespace porolab
