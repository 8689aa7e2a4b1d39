#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/poly.hpp"
#include "bethe/rational.hpp"
#include "bethe/ring_traits.hpp"

namespace bethe {

// Rational function of one variable u in partial-fraction normal form:
//
//   f(u) = polynomial_part(u) + sum over (a, k) of  c_{a,k} * (u - z_a)^{-k}
//
// with poles restricted to a fixed list z_1..z_n shared by all operands of an
// arithmetic operation. Stored pole coefficients are nonzero, which makes the
// normal form canonical and lets identities be decided structurally.
//
// Coefficients live in a ring C (Rational, or operator matrices). All scalar
// bookkeeping multiplies C-values by Rationals only; the only C*C products
// are between one coefficient of each operand, taken in operand order, so
// matrix-valued instantiations are safe.
template <class C>
class RatFun {
  public:
    using PoleKey = std::pair<int, int>;  // (pole index a, order k >= 1)

    RatFun(std::vector<Rational> poles, C zero)
        : poles_(std::move(poles)), zero_(std::move(zero)) {}

    static RatFun constant(const std::vector<Rational>& poles, C value, const C& zero) {
        RatFun f(poles, zero);
        f.poly_ = Poly<C>(std::move(value));
        return f;
    }

    static RatFun from_polynomial(const std::vector<Rational>& poles, Poly<C> p, const C& zero) {
        RatFun f(poles, zero);
        f.poly_ = std::move(p);
        return f;
    }

    static RatFun simple_pole(const std::vector<Rational>& poles, int a, C coeff, const C& zero) {
        RatFun f(poles, zero);
        f.add_pole_term(a, 1, std::move(coeff));
        return f;
    }

    const std::vector<Rational>& poles() const { return poles_; }
    const Poly<C>& polynomial_part() const { return poly_; }
    const std::map<PoleKey, C>& pole_terms() const { return pole_; }
    const C& zero_sample() const { return zero_; }

    bool is_zero() const { return poly_.is_zero() && pole_.empty(); }

    void add_pole_term(int a, int k, C coeff) {
        if (a < 0 || a >= static_cast<int>(poles_.size()) || k < 1)
            throw Error("pole term out of range");
        if (RingTraits<C>::is_zero(coeff)) return;
        auto key = PoleKey{a, k};
        auto it = pole_.find(key);
        if (it == pole_.end()) {
            pole_.emplace(key, std::move(coeff));
        } else {
            it->second += coeff;
            if (RingTraits<C>::is_zero(it->second)) pole_.erase(it);
        }
    }

    C pole_coeff(int a, int k) const {
        auto it = pole_.find(PoleKey{a, k});
        return it == pole_.end() ? zero_ : it->second;
    }

    C residue(int a) const { return pole_coeff(a, 1); }

    int max_pole_order() const {
        int m = 0;
        for (const auto& [key, c] : pole_) m = std::max(m, key.second);
        return m;
    }

    RatFun& operator+=(const RatFun& o) {
        check_compatible(o);
        poly_ += o.poly_;
        for (const auto& [key, c] : o.pole_) add_pole_term(key.first, key.second, c);
        return *this;
    }
    RatFun& operator-=(const RatFun& o) {
        check_compatible(o);
        poly_ -= o.poly_;
        for (const auto& [key, c] : o.pole_) add_pole_term(key.first, key.second, -c);
        return *this;
    }

    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }

    RatFun operator-() const { return scaled(Rational(-1)); }

    RatFun scaled(const Rational& s) const {
        RatFun r(poles_, zero_);
        if (s.is_zero()) return r;
        r.poly_ = poly_.scaled(s);
        for (const auto& [key, c] : pole_) r.pole_.emplace(key, bethe::scale(c, s));
        return r;
    }

    friend RatFun operator*(const RatFun& f, const RatFun& g) {
        f.check_compatible(g);
        RatFun r(f.poles_, f.zero_);
        r.poly_ = f.poly_ * g.poly_;
        for (const auto& [key, c] : g.pole_)
            r.accumulate_poly_times_pole(f.poly_, c, key.first, key.second, /*poly_on_left=*/true);
        for (const auto& [key, c] : f.pole_)
            r.accumulate_poly_times_pole(g.poly_, c, key.first, key.second, /*poly_on_left=*/false);
        for (const auto& [fk, fc] : f.pole_)
            for (const auto& [gk, gc] : g.pole_) r.accumulate_pole_times_pole(fk, fc, gk, gc);
        return r;
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.poles_ == b.poles_ && a.poly_ == b.poly_ && a.pole_ == b.pole_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    // d/du: the polynomial part differentiates termwise and each pole term
    // (u - z_a)^{-k} maps to -k (u - z_a)^{-k-1}.
    RatFun derivative() const {
        RatFun r(poles_, zero_);
        r.poly_ = poly_.derivative();
        for (const auto& [key, c] : pole_)
            r.pole_.emplace(PoleKey{key.first, key.second + 1},
                            bethe::scale(c, Rational(-static_cast<long>(key.second))));
        return r;
    }

    C eval(const Rational& u) const {
        for (const auto& z : poles_)
            if (u == z && has_pole_at_value(z)) throw Error("evaluation at a pole");
        C acc = poly_.eval(u, zero_);
        for (const auto& [key, c] : pole_) {
            Rational base = u - poles_[static_cast<std::size_t>(key.first)];
            acc += bethe::scale(c, pow(base, -static_cast<long>(key.second)));
        }
        return acc;
    }

    // Coefficient of u^{-j} in the expansion at u -> infinity, exact:
    // (u - z)^{-k} = sum_{j >= k} binom(j-1, k-1) z^{j-k} u^{-j}.
    // For j = 0 this is the constant term of the expansion, which requires the
    // polynomial part to be constant.
    C infinity_coeff(int j) const {
        if (j < 0) throw Error("expansion coefficient index must be nonnegative");
        if (j == 0) {
            if (poly_.degree() > 0) throw Error("no constant term: polynomial part has positive degree");
            return poly_.coeff_or(0, zero_);
        }
        C acc = zero_;
        for (const auto& [key, c] : pole_) {
            const int k = key.second;
            if (k > j) continue;
            Rational s = binomial(static_cast<unsigned long>(j - 1), static_cast<unsigned long>(k - 1)) *
                         pow(poles_[static_cast<std::size_t>(key.first)], static_cast<long>(j - k));
            acc += bethe::scale(c, s);
        }
        return acc;
    }

  private:
    void check_compatible(const RatFun& o) const {
        if (poles_ != o.poles_) throw Error("incompatible pole sets");
    }

    bool has_pole_at_value(const Rational& z) const {
        for (const auto& [key, c] : pole_)
            if (poles_[static_cast<std::size_t>(key.first)] == z) return true;
        return false;
    }

    // Adds p(u) * c * (u - z_b)^{-m} (or the mirrored order) to *this.
    // Expands p around z_b, so the quotient splits exactly into a polynomial
    // plus pole terms of order < m.
    void accumulate_poly_times_pole(const Poly<C>& p, const C& c, int b, int m, bool poly_on_left) {
        if (p.is_zero()) return;
        const Rational& zb = poles_[static_cast<std::size_t>(b)];
        Poly<C> around = p.shifted(zb);  // around(v) = p(v + z_b), v = u - z_b
        std::vector<C> high;             // coefficients of v^{r-m} for r >= m
        for (int r = 0; r <= around.degree(); ++r) {
            C prod = poly_on_left ? around.coeff_or(r, zero_) * c : c * around.coeff_or(r, zero_);
            if (r < m) {
                add_pole_term(b, m - r, std::move(prod));
            } else {
                if (static_cast<int>(high.size()) < r - m + 1) high.resize(static_cast<std::size_t>(r - m) + 1, zero_);
                high[static_cast<std::size_t>(r - m)] = std::move(prod);
            }
        }
        if (!high.empty()) poly_ += Poly<C>(std::move(high)).shifted(-zb);
    }

    // Adds c_f (u-z_a)^{-k} * c_g (u-z_b)^{-m}. Equal poles merge; distinct
    // poles split by the exact two-pole partial-fraction identity.
    void accumulate_pole_times_pole(const PoleKey& fk, const C& c_f, const PoleKey& gk, const C& c_g) {
        const auto [a, k] = fk;
        const auto [b, m] = gk;
        C coeff = c_f * c_g;
        if (RingTraits<C>::is_zero(coeff)) return;
        if (a == b) {
            add_pole_term(a, k + m, std::move(coeff));
            return;
        }
        const Rational dab = poles_[static_cast<std::size_t>(a)] - poles_[static_cast<std::size_t>(b)];
        for (int i = 1; i <= k; ++i) {
            Rational s = binomial(static_cast<unsigned long>(m + k - i - 1), static_cast<unsigned long>(k - i)) *
                         pow(dab, -static_cast<long>(m + k - i));
            if ((k - i) % 2 != 0) s = -s;
            add_pole_term(a, i, bethe::scale(coeff, s));
        }
        for (int j = 1; j <= m; ++j) {
            Rational s = binomial(static_cast<unsigned long>(k + m - j - 1), static_cast<unsigned long>(m - j)) *
                         pow(-dab, -static_cast<long>(k + m - j));
            if ((m - j) % 2 != 0) s = -s;
            add_pole_term(b, j, bethe::scale(coeff, s));
        }
    }

    std::vector<Rational> poles_;
    C zero_;  // additive identity of the right shape
    Poly<C> poly_;
    std::map<PoleKey, C> pole_;
};

}  // namespace bethe
