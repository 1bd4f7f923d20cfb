#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace porolab {

/// Exact rational number, always in lowest terms with positive denominator.
/// Thin value wrapper over GMP's mpq_class; no operation ever rounds.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, integers are rationals
    Rat(long num, long den);
    explicit Rat(mpq_class q);
    Rat(mpz_class num, mpz_class den);

    /// Accepts "p", "-p", "p/q" with arbitrary-precision digits. Rejects q <= 0.
    static std::optional<Rat> parse(std::string_view text);

    /// 2^e for any machine exponent (negative gives 1/2^|e|).
    static Rat pow2(long e);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool positive() const { return sgn(v_) > 0; }
    bool negative() const { return sgn(v_) < 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    /// Canonical "p/q" string, "p" when the denominator is 1.
    std::string str() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inverse() const;
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    /// x^e with integer exponent; e < 0 inverts (x must be nonzero then).
    Rat pow(long e) const;

    /// Largest k with 2^k <= x; requires x > 0.
    long floor_log2() const;

    /// max(bits of numerator, bits of denominator) — the representation cost.
    std::size_t bit_size() const;

    /// Exact k-th root when one exists (componentwise on num/den), else nullopt.
    std::optional<Rat> nth_root(unsigned long k) const;

    /// Natural log as double, stable for astronomically small/large values.
    double log_approx() const;

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class v_;
};

/// Rational extended with +infinity (for M, C(tau), C_E).
struct ExtRat {
    bool infinite = false;
    Rat value;  // meaningful only when !infinite

    static ExtRat inf() { return ExtRat{true, Rat()}; }
    static ExtRat finite(Rat v) { return ExtRat{false, std::move(v)}; }

    std::string str() const { return infinite ? "inf" : value.str(); }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
};

}  // namespace porolab
