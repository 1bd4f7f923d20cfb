#include "porolab/set.hpp"

#include "porolab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace porolab {

namespace {

TailClass invert_class(TailClass c) {
    using K = TailClass::Kind;
    switch (c.kind) {
        case K::Constant:
        case K::FiniteRecurring:
            for (auto& v : c.recurring) v = v.inverse();
            std::sort(c.recurring.begin(), c.recurring.end());
            return c;
        case K::EscapeToInfinity: c.kind = K::VanishToZero; return c;
        case K::VanishToZero: c.kind = K::EscapeToInfinity; return c;
        case K::RecurringPlusEscape:
        case K::RecurringPlusVanish:
            for (auto& v : c.recurring) v = v.inverse();
            std::sort(c.recurring.begin(), c.recurring.end());
            c.kind = c.kind == K::RecurringPlusEscape ? K::RecurringPlusVanish
                                                      : K::RecurringPlusEscape;
            return c;
        case K::PowerFamily:
            c.base = c.base.inverse();
            c.scale = c.scale.inverse();
            return c;
        case K::Unknown: return c;
    }
    return c;
}

TailClass scale_class(TailClass c, const Rat& s) {
    if (s == Rat(1)) return c;
    for (auto& v : c.recurring) v = v * s;
    std::sort(c.recurring.begin(), c.recurring.end());
    c.scale = c.scale * s;
    return c;
}

// Generation-semantics supremum of a decay law's ratio tail {rho_n : n >= from}.
// For Power/Factorial the ratio is strictly decreasing, so the first tail value
// bounds it; x_from must be supplied for PowerIter.
ExtRat law_tail_rho_sup(const DecayLaw& law, std::size_t from, const std::optional<Rat>& x_from) {
    if (const auto* g = std::get_if<DecayLaw::Geometric>(&law.node())) {
        return ExtRat::finite(g->r);
    }
    if (std::holds_alternative<DecayLaw::Factorial>(law.node())) {
        return ExtRat::finite(Rat(1, static_cast<long>(from) + 1));
    }
    if (std::holds_alternative<DecayLaw::PowerIter>(law.node())) {
        if (!x_from) return ExtRat::inf();  // unknown, caller treats as not certified
        return ExtRat::finite(law.rho(*x_from, from));
    }
    const auto& t = std::get<DecayLaw::Table>(law.node());
    return t.rho.tail_sup_generated(from);
}

}  // namespace

std::size_t default_bit_budget() {
    static const std::size_t value = [] {
        if (const char* env = std::getenv("POROLAB_BIT_BUDGET")) {
            long v = std::atol(env);
            if (v >= 1024) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1) << 20;
    }();
    return value;
}

// ---------------------------------------------------------------------------
// SetSpec

bool SetSpec::operator==(const SetSpec& o) const {
    if (name != o.name || default_depth != o.default_depth || origin_in_set != o.origin_in_set)
        return false;
    if (shape.index() != o.shape.index()) return false;
    return std::visit(
        [&o](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(o.shape);
            if constexpr (std::is_same_v<T, SetSpec::Points> || std::is_same_v<T, SetSpec::Bands>) {
                return a.law == b.law;
            } else if constexpr (std::is_same_v<T, SetSpec::Thicken>) {
                return a.law == b.law && a.q == b.q;
            } else if constexpr (std::is_same_v<T, SetSpec::ExplicitBlocks>) {
                return a.blocks == b.blocks;
            } else {
                static_assert(std::is_same_v<T, SetSpec::RatioGaps>);
                return a.gap_ratio == b.gap_ratio && a.block_ratio == b.block_ratio &&
                       a.seed == b.seed;
            }
        },
        shape);
}

std::string shape_name(const SetSpec::Shape& s) {
    switch (s.index()) {
        case 0: return "blocks";
        case 1: return "points";
        case 2: return "thicken";
        case 3: return "bands";
        default: return "ratio_gaps";
    }
}

// ---------------------------------------------------------------------------
// GermSet implementation

struct GermSet::Impl {
    SetSpec spec;
    std::optional<DecayLaw> law;
    Rat thicken_q = Rat(1);
    std::vector<Block> leading;   // thicken: merged components above the law tail
    std::size_t tail_from = 1;    // law index of the first tail block
    TailClass gap_class, consec_class, diam_class;
    std::size_t bit_budget = 0;
    std::string tag;

    mutable std::mutex mu;
    mutable std::vector<Rat> xs;        // law points x_1..x_k
    mutable bool xs_done = false;       // budget or exactness ceiling reached
    mutable std::vector<Block> blocks;  // cache, 1-based semantics
    mutable bool blocks_done = false;

    // --- all methods below assume mu is held ---

    bool extend_xs() const {
        if (xs_done) return false;
        Rat next;
        if (xs.empty()) {
            next = law->first();
        } else {
            auto stepped = law->step(xs.back(), xs.size());
            if (!stepped) {  // exact root does not exist; representable prefix ends here
                xs_done = true;
                return false;
            }
            next = std::move(*stepped);
        }
        if (next.bit_size() > bit_budget) {
            xs_done = true;
            return false;
        }
        if (!next.positive() || (!xs.empty() && !(next < xs.back())))
            throw AnalysisError("law generator is not strictly decreasing");
        xs.push_back(std::move(next));
        return true;
    }

    bool ensure_xs(std::size_t k) const {
        while (xs.size() < k)
            if (!extend_xs()) return false;
        return true;
    }

    bool extend_blocks() const {
        if (blocks_done) return false;
        std::size_t n = blocks.size() + 1;
        std::optional<Block> b = make_block(n);
        if (!b) {
            blocks_done = true;
            return false;
        }
        if (!b->lo.positive() || b->lo > b->hi)
            throw AnalysisError("generator produced an invalid block");
        if (!blocks.empty() && !(b->hi < blocks.back().lo))
            throw AnalysisError("generator produced non-disjoint blocks");
        blocks.push_back(std::move(*b));
        return true;
    }

    std::optional<Block> make_block(std::size_t n) const {
        if (std::holds_alternative<SetSpec::Points>(spec.shape)) {
            if (!ensure_xs(n)) return std::nullopt;
            return Block{xs[n - 1], xs[n - 1]};
        }
        if (std::holds_alternative<SetSpec::Thicken>(spec.shape)) {
            if (n <= leading.size()) return leading[n - 1];
            std::size_t k = tail_from + (n - leading.size() - 1);
            if (!ensure_xs(k)) return std::nullopt;
            Rat hi = thicken_q * xs[k - 1];
            if (hi.bit_size() > bit_budget) return std::nullopt;
            return Block{xs[k - 1], std::move(hi)};
        }
        if (std::holds_alternative<SetSpec::Bands>(spec.shape)) {
            if (!ensure_xs(2 * n + 1)) return std::nullopt;
            return Block{xs[2 * n], xs[2 * n - 1]};  // [x_{2n+1}, x_{2n}]
        }
        const auto& rg = std::get<SetSpec::RatioGaps>(spec.shape);
        Rat hi = n == 1 ? rg.seed
                        : blocks[n - 2].lo / rg.gap_ratio.value(n - 1);
        Rat lo = hi / rg.block_ratio.value(n);
        if (hi.bit_size() > bit_budget || lo.bit_size() > bit_budget) return std::nullopt;
        return Block{std::move(lo), std::move(hi)};
    }

    std::size_t materialize(std::size_t n) const {
        while (blocks.size() < n)
            if (!extend_blocks()) break;
        return blocks.size();
    }
};

Block GermSet::block(std::size_t n) const {
    if (n == 0) throw AnalysisError("blocks are 1-based");
    std::lock_guard lock(impl_->mu);
    if (impl_->materialize(n) < n)
        throw AnalysisError("set '" + impl_->spec.name + "': block " + std::to_string(n) +
                            " is beyond the representable depth");
    return impl_->blocks[n - 1];
}

Gap GermSet::gap(std::size_t n) const {
    Block below = block(n + 1), above = block(n);
    return Gap{below.hi, above.lo};
}

std::size_t GermSet::usable_depth(std::size_t request) const {
    std::lock_guard lock(impl_->mu);
    return std::min(request, impl_->materialize(request));
}

const TailClass& GermSet::gap_ratio_class() const { return impl_->gap_class; }
const TailClass& GermSet::consec_class() const { return impl_->consec_class; }
const TailClass& GermSet::diameter_class() const { return impl_->diam_class; }
const std::optional<DecayLaw>& GermSet::law_meta() const { return impl_->law; }
const SetSpec& GermSet::spec() const { return impl_->spec; }
bool GermSet::origin_in_set() const { return impl_->spec.origin_in_set; }
const std::string& GermSet::name() const { return impl_->spec.name; }
std::string GermSet::structure_tag() const { return impl_->tag; }

std::optional<bool> GermSet::contains(const Rat& x, std::size_t depth_hint) const {
    if (!x.positive()) return false;  // only E cap (0, inf) matters here; 0 handled by the flag
    std::size_t limit = depth_hint ? depth_hint : impl_->spec.default_depth;
    std::lock_guard lock(impl_->mu);
    for (std::size_t n = 1;; ++n) {
        if (impl_->materialize(n) < n) return std::nullopt;  // x below the representable floor
        const Block& b = impl_->blocks[n - 1];
        if (b.contains(x)) return true;
        if (b.hi < x) return false;  // deeper blocks are smaller still
        if (n >= limit * 4 + 16) return std::nullopt;  // runaway guard for pathological walks
    }
}

bool GermSet::ratio_monotone_on_window(std::size_t depth) const {
    std::lock_guard lock(impl_->mu);
    if (!impl_->law) return false;
    impl_->ensure_xs(depth + 1);
    const auto& xs = impl_->xs;
    if (xs.size() < 3) return true;
    for (std::size_t k = 0; k + 2 < xs.size(); ++k) {
        // x_{k+2}/x_{k+1} < x_{k+1}/x_k, cross-multiplied to stay in Z
        if (!(xs[k + 2] * xs[k] < xs[k + 1] * xs[k + 1])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// FiniteSet

FiniteSet::FiniteSet(std::vector<Block> blocks_desc, bool origin_in_set, std::string name)
    : blocks_(std::move(blocks_desc)), origin_(origin_in_set), name_(std::move(name)) {
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.lo > b.lo; });
    for (const auto& b : blocks_) {
        if (!b.lo.positive() || b.lo > b.hi)
            throw ElaborationError("blocks: endpoints must satisfy 0 < lo <= hi");
    }
    for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
        if (!(blocks_[i + 1].hi < blocks_[i].lo))
            throw ElaborationError("blocks: must be pairwise disjoint");
    }
}

bool FiniteSet::contains(const Rat& x) const {
    for (const auto& b : blocks_)
        if (b.contains(x)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Elaboration

namespace {

void validate_law(const DecayLaw& law) {
    if (const auto* g = std::get_if<DecayLaw::Geometric>(&law.node())) {
        if (!(g->r > Rat(0) && g->r < Rat(1)))
            throw ElaborationError("geometric: ratio must lie in (0,1)");
    } else if (const auto* p = std::get_if<DecayLaw::PowerIter>(&law.node())) {
        if (!(p->alpha > Rat(1))) throw ElaborationError("power: alpha must exceed 1");
        if (!(p->x0 > Rat(0) && p->x0 < Rat(1)))
            throw ElaborationError("power: x0 must lie in (0,1)");
    } else if (const auto* f = std::get_if<DecayLaw::Factorial>(&law.node())) {
        if (!f->scale.positive()) throw ElaborationError("factorial: scale must be positive");
    } else {
        const auto& t = std::get<DecayLaw::Table>(law.node());
        if (!t.rho.all_less(Rat(1)))
            throw ElaborationError("ratio_table: all ratios must lie in (0,1)");
    }
}

struct ThickenPlan {
    std::vector<Block> leading;
    std::size_t tail_from;
};

// Locate m0 (first index from which q*x_{n+1} < x_n holds forever) and merge
// the finitely many overlapping leading intervals into components.
ThickenPlan plan_thicken(const DecayLaw& law, const Rat& q, std::size_t scan_bound,
                         std::vector<Rat>& xs, std::size_t bit_budget) {
    auto ensure = [&](std::size_t k) {
        while (xs.size() < k) {
            Rat next;
            if (xs.empty()) {
                next = law.first();
            } else {
                auto stepped = law.step(xs.back(), xs.size());
                if (!stepped) throw ElaborationError("thicken: law leaves the rationals");
                next = std::move(*stepped);
            }
            if (next.bit_size() > bit_budget)
                throw ElaborationError("thicken: representation budget hit before m0 was found");
            xs.push_back(std::move(next));
        }
    };

    std::size_t candidate = 1;
    for (std::size_t n = 1; n <= scan_bound; ++n) {
        ensure(n + 1);
        bool ok_here = q * xs[n] < xs[n - 1];
        if (!ok_here) {
            candidate = n + 1;
            continue;
        }
        // window [candidate, n] is clean; check the tail beyond n is certified clean
        ensure(n + 2);
        ExtRat sup = law_tail_rho_sup(law, n + 1, xs[n]);
        if (!sup.infinite && q * sup.value < Rat(1)) {
            std::size_t m0 = candidate;
            ThickenPlan plan;
            plan.tail_from = m0 + 1;
            ensure(m0 + 1);
            Block cur{xs[0], q * xs[0]};
            for (std::size_t k = 2; k <= m0; ++k) {
                if (q * xs[k - 1] >= cur.lo) {
                    cur.lo = xs[k - 1];  // overlap: extend the component downward
                } else {
                    plan.leading.push_back(cur);
                    cur = Block{xs[k - 1], q * xs[k - 1]};
                }
            }
            plan.leading.push_back(cur);
            return plan;
        }
        // tail not certifiably clean yet; keep scanning with the same candidate
    }
    throw ElaborationError("thicken: q*x_{n+1} < x_n could not be established within " +
                           std::to_string(scan_bound) + " indices");
}

}  // namespace

AnySet elaborate(const SetSpec& spec, const ElabOptions& opts) {
    std::size_t budget = opts.bit_budget ? opts.bit_budget : default_bit_budget();

    if (const auto* eb = std::get_if<SetSpec::ExplicitBlocks>(&spec.shape)) {
        return FiniteSet(eb->blocks, spec.origin_in_set, spec.name);
    }

    auto impl = std::make_shared<GermSet::Impl>();
    impl->spec = spec;
    impl->bit_budget = budget;

    if (const auto* p = std::get_if<SetSpec::Points>(&spec.shape)) {
        validate_law(p->law);
        impl->law = p->law;
        TailClass rho = p->law.rho_class();
        impl->gap_class = invert_class(rho);
        impl->consec_class = TailClass::constant(Rat(1));
        impl->diam_class = TailClass::constant(Rat(1));
        impl->tag = "points[" + p->law.tag_string() + "]";
    } else if (const auto* t = std::get_if<SetSpec::Thicken>(&spec.shape)) {
        validate_law(t->law);
        if (!(t->q > Rat(1))) throw ElaborationError("thicken: q must exceed 1");
        impl->law = t->law;
        impl->thicken_q = t->q;
        ThickenPlan plan = plan_thicken(t->law, t->q, opts.m0_scan_bound, impl->xs, budget);
        impl->leading = std::move(plan.leading);
        impl->tail_from = plan.tail_from;
        TailClass rho = t->law.rho_class();
        impl->gap_class = scale_class(invert_class(rho), t->q.inverse());
        impl->consec_class = TailClass::constant(t->q);
        impl->diam_class = TailClass::constant(t->q);
        impl->tag = "thicken[q=" + t->q.str() + "," + t->law.tag_string() + "]";
    } else if (const auto* b = std::get_if<SetSpec::Bands>(&spec.shape)) {
        validate_law(b->law);
        impl->law = b->law;
        if (const auto* tab = std::get_if<DecayLaw::Table>(&b->law.node())) {
            impl->gap_class = invert_class(tab->rho.subsampled(3, 2).tail_class());
            impl->consec_class = invert_class(tab->rho.subsampled(4, 2).tail_class());
            impl->diam_class = invert_class(tab->rho.subsampled(2, 2).tail_class());
        } else {
            TailClass rho = b->law.rho_class();
            impl->gap_class = invert_class(rho);
            impl->consec_class = impl->gap_class;
            impl->diam_class = impl->gap_class;
        }
        impl->tag = "bands[" + b->law.tag_string() + "]";
    } else {
        const auto& rg = std::get<SetSpec::RatioGaps>(spec.shape);
        if (!rg.seed.positive()) throw ElaborationError("ratio_gaps: seed must be positive");
        if (!rg.gap_ratio.all_greater(Rat(1)))
            throw ElaborationError("ratio_gaps: gap ratios must all exceed 1");
        if (!rg.block_ratio.all_at_least(Rat(1)))
            throw ElaborationError("ratio_gaps: block ratios must all be at least 1");
        impl->gap_class = rg.gap_ratio.tail_class();
        impl->consec_class = rg.block_ratio.tail_class();
        impl->diam_class = rg.block_ratio.tail_class();
        impl->tag = "ratio_gaps[" + rg.gap_ratio.brief() + ";" + rg.block_ratio.brief() + "]";
    }

    GermSet set{std::shared_ptr<const GermSet::Impl>(impl)};
    // eager probe: immediate generator failures should surface at elaboration
    if (set.usable_depth(2) < 2)
        throw ElaborationError("set '" + spec.name + "': fewer than two blocks representable");
    return set;
}

}  // namespace porolab
