#include "porolab/dsl.hpp"

#include <cctype>
#include <sstream>

namespace porolab {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Sym, Ellipsis, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        cur_ = Token{Tok::End, "", line_, col_};
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        std::size_t line = line_, col = col_;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                s += eat();
            cur_ = Token{Tok::Ident, std::move(s), line, col};
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && pos_ + 1 < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::string s;
            if (c == '-') s += eat();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                s += eat();
            cur_ = Token{Tok::Int, std::move(s), line, col};
        } else if (c == '.' && src_.substr(pos_, 3) == "...") {
            eat(); eat(); eat();
            cur_ = Token{Tok::Ellipsis, "...", line, col};
        } else {
            cur_ = Token{Tok::Sym, std::string(1, eat()), line, col};
        }
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') eat();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                eat();
            } else {
                break;
            }
        }
    }

    char eat() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
    Token cur_{Tok::End, "", 1, 1};
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    std::vector<SetSpec> file() {
        std::vector<SetSpec> out;
        while (lex_.peek().kind != Tok::End) out.push_back(spec());
        return out;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    Token expect_sym(char c) {
        Token t = lex_.take();
        if (t.kind != Tok::Sym || t.text[0] != c)
            fail(t, std::string("expected '") + c + "', got '" + show(t) + "'");
        return t;
    }

    Token expect_kw(const std::string& kw) {
        Token t = lex_.take();
        if (t.kind != Tok::Ident || t.text != kw)
            fail(t, "expected '" + kw + "', got '" + show(t) + "'");
        return t;
    }

    bool peek_sym(char c) {
        const Token& t = lex_.peek();
        return t.kind == Tok::Sym && t.text[0] == c;
    }

    static std::string show(const Token& t) {
        return t.kind == Tok::End ? "<end of input>" : t.text;
    }

    Rat rational() {
        Token t = lex_.take();
        if (t.kind != Tok::Int) fail(t, "expected a rational, got '" + show(t) + "'");
        std::string text = t.text;
        if (peek_sym('/')) {
            lex_.take();
            Token d = lex_.take();
            if (d.kind != Tok::Int || d.text[0] == '-') fail(d, "expected a positive denominator");
            text += "/" + d.text;
        }
        auto r = Rat::parse(text);
        if (!r) fail(t, "malformed rational '" + text + "'");
        return *r;
    }

    Rat named_rational(const std::string& key) {
        expect_kw(key);
        expect_sym('=');
        return rational();
    }

    SetSpec spec() {
        expect_kw("set");
        Token name = lex_.take();
        if (name.kind != Tok::Ident) fail(name, "expected a set name");
        SetSpec s;
        s.name = name.text;
        expect_sym('{');
        bool have_shape = false;
        while (true) {
            Token key = lex_.take();
            if (key.kind != Tok::Ident) fail(key, "expected a field name");
            if (key.text == "shape") {
                expect_sym('=');
                s.shape = shape();
                have_shape = true;
            } else if (key.text == "depth") {
                expect_sym('=');
                Token d = lex_.take();
                if (d.kind != Tok::Int || d.text[0] == '-' || d.text == "0")
                    fail(d, "depth must be a positive integer");
                s.default_depth = static_cast<std::size_t>(std::stoul(d.text));
            } else if (key.text == "origin") {
                expect_sym('=');
                Token v = lex_.take();
                if (v.kind != Tok::Ident || (v.text != "in" && v.text != "out"))
                    fail(v, "origin must be 'in' or 'out'");
                s.origin_in_set = v.text == "in";
            } else {
                fail(key, "unknown field '" + key.text + "'");
            }
            if (peek_sym(',')) {
                lex_.take();
                continue;
            }
            break;
        }
        Token close = expect_sym('}');
        if (!have_shape) fail(close, "set '" + s.name + "' has no shape");
        return s;
    }

    SetSpec::Shape shape() {
        Token t = lex_.take();
        if (t.kind != Tok::Ident) fail(t, "expected a shape");
        if (t.text == "points") {
            expect_sym('(');
            DecayLaw l = law();
            expect_sym(')');
            return SetSpec::Points{std::move(l)};
        }
        if (t.text == "thicken") {
            expect_sym('(');
            DecayLaw l = law();
            expect_sym(',');
            Token qpos = lex_.peek();
            Rat q = named_rational("q");
            if (!(q > Rat(1))) fail(qpos, "thicken: q must exceed 1");
            expect_sym(')');
            return SetSpec::Thicken{std::move(l), std::move(q)};
        }
        if (t.text == "bands") {
            expect_sym('(');
            DecayLaw l = law();
            expect_sym(')');
            return SetSpec::Bands{std::move(l)};
        }
        if (t.text == "blocks") {
            expect_sym('(');
            expect_sym('[');
            std::vector<Block> bs;
            while (!peek_sym(']')) {
                Token at = lex_.peek();
                Rat lo = rational();
                expect_sym(',');
                Rat hi = rational();
                expect_sym(';');
                if (!lo.positive() || lo > hi) fail(at, "block needs 0 < lo <= hi");
                bs.push_back(Block{std::move(lo), std::move(hi)});
            }
            expect_sym(']');
            expect_sym(')');
            return SetSpec::ExplicitBlocks{std::move(bs)};
        }
        if (t.text == "ratio_gaps") {
            expect_sym('(');
            Token gpos = lex_.peek();
            RatioMap g = ratiomap();
            if (!g.all_greater(Rat(1))) fail(gpos, "ratio_gaps: gap ratios must all exceed 1");
            expect_sym(',');
            Token bpos = lex_.peek();
            RatioMap b = ratiomap();
            if (!b.all_at_least(Rat(1)))
                fail(bpos, "ratio_gaps: block ratios must all be at least 1");
            expect_sym(',');
            Token spos = lex_.peek();
            Rat seed = named_rational("seed");
            if (!seed.positive()) fail(spos, "ratio_gaps: seed must be positive");
            expect_sym(')');
            return SetSpec::RatioGaps{std::move(g), std::move(b), std::move(seed)};
        }
        fail(t, "unknown shape '" + t.text + "'");
    }

    DecayLaw law() {
        Token t = lex_.take();
        if (t.kind != Tok::Ident) fail(t, "expected a decay law");
        if (t.text == "geometric") {
            expect_sym('(');
            Token rpos = lex_.peek();
            Rat r = named_rational("r");
            if (!(r > Rat(0) && r < Rat(1))) fail(rpos, "ratio must lie in (0,1)");
            expect_sym(')');
            return DecayLaw(DecayLaw::Geometric{std::move(r)});
        }
        if (t.text == "power") {
            expect_sym('(');
            Token apos = lex_.peek();
            Rat alpha = named_rational("alpha");
            if (!(alpha > Rat(1))) fail(apos, "alpha must exceed 1");
            if (!alpha.num().fits_slong_p() || !alpha.den().fits_slong_p() ||
                alpha > Rat(64))
                fail(apos, "alpha out of supported range (1, 64]");
            expect_sym(',');
            Token xpos = lex_.peek();
            Rat x0 = named_rational("x0");
            if (!(x0 > Rat(0) && x0 < Rat(1))) fail(xpos, "x0 must lie in (0,1)");
            expect_sym(')');
            return DecayLaw(DecayLaw::PowerIter{std::move(alpha), std::move(x0)});
        }
        if (t.text == "factorial") {
            expect_sym('(');
            Token spos = lex_.peek();
            Rat s = named_rational("scale");
            if (!s.positive()) fail(spos, "scale must be positive");
            expect_sym(')');
            return DecayLaw(DecayLaw::Factorial{std::move(s)});
        }
        if (t.text == "ratio_table") {
            expect_sym('(');
            Token mpos = lex_.peek();
            RatioMap m = ratiomap();
            if (!m.all_less(Rat(1))) fail(mpos, "ratio_table: all ratios must lie in (0,1)");
            expect_sym(')');
            return DecayLaw(DecayLaw::Table{std::move(m)});
        }
        fail(t, "unknown law '" + t.text + "'");
    }

    RatioMap ratiomap() {
        Token t = lex_.take();
        if (t.kind != Tok::Ident) fail(t, "expected a ratio map");
        auto values = [this](bool allow_ellipsis) -> std::pair<std::vector<Rat>, bool> {
            expect_sym('[');
            std::vector<Rat> vals;
            bool open = false;
            while (true) {
                if (allow_ellipsis && lex_.peek().kind == Tok::Ellipsis) {
                    lex_.take();
                    open = true;
                    break;
                }
                Token vpos = lex_.peek();
                Rat v = rational();
                if (!v.positive()) fail(vpos, "ratio map values must be positive");
                vals.push_back(std::move(v));
                if (peek_sym(',')) {
                    lex_.take();
                    continue;
                }
                break;
            }
            expect_sym(']');
            return {std::move(vals), open};
        };
        if (t.text == "list") {
            auto [vals, open] = values(true);
            if (vals.empty()) fail(t, "list needs at least one value");
            return RatioMap::list(std::move(vals), open);
        }
        if (t.text == "cycle") {
            auto [vals, open] = values(false);
            if (vals.empty()) fail(t, "cycle needs at least one value");
            return RatioMap::cycle(std::move(vals));
        }
        if (t.text == "pow") {
            auto [vals, open] = values(false);
            if (vals.size() != 1) fail(t, "pow takes exactly one base");
            return RatioMap::pow(vals[0]);
        }
        if (t.text == "diagpow") {
            auto [vals, open] = values(false);
            if (vals.size() != 1) fail(t, "diagpow takes exactly one base");
            return RatioMap::diag_pow(vals[0]);
        }
        if (t.text == "interleave") {
            expect_sym('[');
            RatioMap a = ratiomap();
            expect_sym(';');
            RatioMap b = ratiomap();
            expect_sym(']');
            return RatioMap::interleave(std::move(a), std::move(b));
        }
        fail(t, "unknown ratio map '" + t.text + "'");
    }

    Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printer

void print_map(std::ostream& os, const RatioMap& m) {
    std::visit(
        [&os](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, RatioMap::ListPrefix>) {
                os << "list[";
                for (std::size_t i = 0; i < node.vals.size(); ++i)
                    os << (i ? ", " : "") << node.vals[i];
                if (node.open_ended) os << ", ...";
                os << "]";
            } else if constexpr (std::is_same_v<T, RatioMap::Cycle>) {
                os << "cycle[";
                for (std::size_t i = 0; i < node.vals.size(); ++i)
                    os << (i ? ", " : "") << node.vals[i];
                os << "]";
            } else if constexpr (std::is_same_v<T, RatioMap::Pow>) {
                os << "pow[" << node.base << "]";
            } else if constexpr (std::is_same_v<T, RatioMap::DiagPow>) {
                os << "diagpow[" << node.base << "]";
            } else if constexpr (std::is_same_v<T, RatioMap::Interleave>) {
                os << "interleave[";
                print_map(os, *node.first);
                os << "; ";
                print_map(os, *node.second);
                os << "]";
            } else {
                // Shift/Subsample are internal transforms, never parsed forms
                throw AnalysisError("cannot print a derived ratio map");
            }
        },
        m.node());
}

void print_law(std::ostream& os, const DecayLaw& l) {
    std::visit(
        [&os](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, DecayLaw::Geometric>) {
                os << "geometric(r=" << node.r << ")";
            } else if constexpr (std::is_same_v<T, DecayLaw::PowerIter>) {
                os << "power(alpha=" << node.alpha << ", x0=" << node.x0 << ")";
            } else if constexpr (std::is_same_v<T, DecayLaw::Factorial>) {
                os << "factorial(scale=" << node.scale << ")";
            } else {
                os << "ratio_table(";
                print_map(os, node.rho);
                os << ")";
            }
        },
        l.node());
}

void print_shape(std::ostream& os, const SetSpec::Shape& s) {
    std::visit(
        [&os](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SetSpec::Points>) {
                os << "points(";
                print_law(os, node.law);
                os << ")";
            } else if constexpr (std::is_same_v<T, SetSpec::Thicken>) {
                os << "thicken(";
                print_law(os, node.law);
                os << ", q=" << node.q << ")";
            } else if constexpr (std::is_same_v<T, SetSpec::Bands>) {
                os << "bands(";
                print_law(os, node.law);
                os << ")";
            } else if constexpr (std::is_same_v<T, SetSpec::ExplicitBlocks>) {
                os << "blocks([";
                for (const auto& b : node.blocks) os << b.lo << "," << b.hi << "; ";
                os << "])";
            } else {
                static_assert(std::is_same_v<T, SetSpec::RatioGaps>);
                os << "ratio_gaps(";
                print_map(os, node.gap_ratio);
                os << ", ";
                print_map(os, node.block_ratio);
                os << ", seed=" << node.seed << ")";
            }
        },
        s);
}

}  // namespace

std::vector<SetSpec> parse_specs(std::string_view text) {
    return Parser(text).file();
}

SetSpec parse_spec(std::string_view text) {
    auto all = parse_specs(text);
    if (all.size() != 1)
        throw ParseError(1, 1, "expected exactly one set definition, found " +
                                   std::to_string(all.size()));
    return all.front();
}

std::string print_spec(const SetSpec& spec) {
    std::ostringstream os;
    os << "set " << spec.name << " {\n  shape = ";
    print_shape(os, spec.shape);
    os << ",\n  depth = " << spec.default_depth;
    os << ",\n  origin = " << (spec.origin_in_set ? "in" : "out") << "\n}\n";
    return os.str();
}

std::string print_specs(const std::vector<SetSpec>& specs) {
    std::string out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i) out += "\n";
        out += print_spec(specs[i]);
    }
    return out;
}

}  // namespace porolab
