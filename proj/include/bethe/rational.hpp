#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "bethe/error.hpp"

namespace bethe {

// Arbitrary-precision rational scalar, the coefficient field for everything
// in this library. Values are kept canonical at all times: gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Backed by GMP's mpq_class.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    // Parses "p/q" or "p" with an optional leading minus sign; q must be a
    // positive integer. Anything else is rejected.
    static Rational from_string(const std::string& s) {
        if (!valid_literal(s)) throw Error("malformed rational literal: '" + s + "'");
        Rational r;
        r.v_ = mpq_class(s, 10);
        r.v_.canonicalize();
        return r;
    }

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const { return v_.get_str(); }

    const mpz_class& numerator() const { return v_.get_num(); }
    const mpz_class& denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw Error("rational inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_.get_str();
    }

  private:
    static bool valid_literal(const std::string& s) {
        std::size_t i = 0;
        if (i < s.size() && s[i] == '-') ++i;
        std::size_t num_digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++num_digits; }
        if (num_digits == 0) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        std::size_t den_start = i, den_digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++den_digits; }
        if (den_digits == 0 || i != s.size()) return false;
        // Denominator must be a positive integer.
        for (std::size_t k = den_start; k < den_start + den_digits; ++k)
            if (s[k] != '0') return true;
        return false;
    }

    mpq_class v_;
};

// r^e with integer e; negative exponents invert (throws on zero base).
inline Rational pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? r : r.inverse();
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), k);
    return Rational(mpq_class(num, den));
}

// Exact binomial coefficient as a Rational.
inline Rational binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

}  // namespace bethe
