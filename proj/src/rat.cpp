#include "porolab/rat.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace porolab {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat::Rat(mpq_class q) : v_(std::move(q)) {
    v_.canonicalize();
}

Rat::Rat(mpz_class num, mpz_class den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(std::move(num), std::move(den));
    v_.canonicalize();
}

std::optional<Rat> Rat::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    auto is_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '-') s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rat(mpq_class(std::string(text)));
        }
        auto p = text.substr(0, slash);
        auto q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q) || q.front() == '-') return std::nullopt;
        mpz_class den{std::string(q)};
        if (den == 0) return std::nullopt;
        return Rat(mpz_class{std::string(p)}, std::move(den));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

Rat Rat::pow2(long e) {
    mpz_class p = 1;
    if (e >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rat(std::move(p), 1);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return Rat(1, std::move(p));
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1) / v_);
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), k);
    Rat r{std::move(n), std::move(d)};
    return inv ? r.inverse() : r;
}

long Rat::floor_log2() const {
    if (!positive()) throw std::domain_error("Rat: floor_log2 of nonpositive");
    long bn = static_cast<long>(mpz_sizeinbase(num().get_mpz_t(), 2));
    long bd = static_cast<long>(mpz_sizeinbase(den().get_mpz_t(), 2));
    long d = bn - bd;  // 2^(d-1) <= x < 2^(d+1)
    // x >= 2^d  <=>  num >= den << d (d >= 0)  or  num << -d >= den
    mpz_class lhs = num(), rhs = den();
    if (d >= 0)
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(d));
    else
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-d));
    return lhs >= rhs ? d : d - 1;
}

std::size_t Rat::bit_size() const {
    std::size_t bn = mpz_sizeinbase(num().get_mpz_t(), 2);
    std::size_t bd = mpz_sizeinbase(den().get_mpz_t(), 2);
    return bn > bd ? bn : bd;
}

std::optional<Rat> Rat::nth_root(unsigned long k) const {
    if (k == 0) return std::nullopt;
    if (negative() && k % 2 == 0) return std::nullopt;
    mpz_class rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num().get_mpz_t(), k);
    int exact_d = mpz_root(rd.get_mpz_t(), den().get_mpz_t(), k);
    if (!exact_n || !exact_d) return std::nullopt;
    return Rat(std::move(rn), std::move(rd));
}

double Rat::log_approx() const {
    if (!positive()) throw std::domain_error("Rat: log of nonpositive");
    signed long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, den().get_mpz_t());
    constexpr double ln2 = 0.6931471805599453;
    return std::log(mn) - std::log(md) + ln2 * (static_cast<double>(en) - static_cast<double>(ed));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace porolab
