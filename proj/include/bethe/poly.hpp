#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/rational.hpp"
#include "bethe/ring_traits.hpp"

namespace bethe {

// Dense polynomial in one variable over a coefficient ring C (Rational, or a
// matrix ring). Coefficient index = degree. Normal form: the zero polynomial
// stores no coefficients, otherwise the leading coefficient is nonzero.
// Coefficient products keep left-to-right operand order, so instantiation
// with noncommuting C stays well-defined.
template <class C>
class Poly {
  public:
    Poly() = default;
    explicit Poly(C constant) {
        c_.push_back(std::move(constant));
        normalize();
    }
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<C> coeffs) : c_(coeffs) { normalize(); }

    static Poly monomial(int degree, C coeff, const C& zero) {
        std::vector<C> v(static_cast<std::size_t>(degree) + 1, zero);
        v.back() = std::move(coeff);
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<C>& coeffs() const { return c_; }

    // Coefficient of x^k, or `zero` when k is out of range.
    const C& coeff_or(int k, const C& zero) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(k)];
    }

    const C& leading() const {
        if (c_.empty()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RingTraits<C>::zero(o.c_.back()));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        normalize();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RingTraits<C>::zero(o.c_.back()));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        normalize();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        const C zero = RingTraits<C>::zero(a.c_.front());
        std::vector<C> out(a.c_.size() + b.c_.size() - 1, zero);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const Rational& s) const {
        if (s.is_zero()) return Poly();
        Poly r = *this;
        for (auto& c : r.c_) c = scale(c, s);
        r.normalize();
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<C> out;
        out.reserve(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            out.push_back(scale(c_[k], Rational(static_cast<long>(k))));
        return Poly(std::move(out));
    }

    // Horner evaluation at a scalar point.
    C eval(const Rational& x, const C& zero) const {
        C acc = zero;
        for (std::size_t k = c_.size(); k-- > 0;) {
            acc = scale(acc, x);
            acc += c_[k];
        }
        return acc;
    }

    // p(x + t): exact Taylor shift via binomials.
    Poly shifted(const Rational& t) const {
        if (is_zero() || t.is_zero()) return *this;
        const C zero = RingTraits<C>::zero(c_.front());
        std::vector<C> out(c_.size(), zero);
        for (std::size_t r = 0; r < c_.size(); ++r)
            for (std::size_t m = r; m < c_.size(); ++m)
                out[r] += scale(c_[m], binomial(m, r) * pow(t, static_cast<long>(m - r)));
        return Poly(std::move(out));
    }

  private:
    void normalize() {
        while (!c_.empty() && RingTraits<C>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

// Convenience for the scalar case.
inline Rational poly_eval(const Poly<Rational>& p, const Rational& x) {
    return p.eval(x, Rational(0));
}

// Product of linear factors (x - roots[0])...(x - roots[k-1]).
inline Poly<Rational> poly_from_roots(const std::vector<Rational>& roots) {
    Poly<Rational> p{Rational(1)};
    for (const auto& r : roots) p = p * Poly<Rational>{-r, Rational(1)};
    return p;
}

// Euclidean division over the rational field: a = q*b + r with deg r < deg b.
inline std::pair<Poly<Rational>, Poly<Rational>> poly_divmod(const Poly<Rational>& a,
                                                             const Poly<Rational>& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quot;
    const int db = b.degree();
    if (a.degree() >= db) quot.assign(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
    const Rational lead_inv = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        Rational f = rem[static_cast<std::size_t>(k)] * lead_inv;
        if (f.is_zero()) continue;
        quot[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k - db + j)] -=
                f * b.coeff_or(j, Rational(0));
    }
    return {Poly<Rational>(std::move(quot)), Poly<Rational>(std::move(rem))};
}

// Monic gcd over the rational field.
inline Poly<Rational> poly_gcd(Poly<Rational> a, Poly<Rational> b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.leading().inverse());
}

inline bool poly_is_squarefree(const Poly<Rational>& p) {
    if (p.degree() <= 1) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// Exact Lagrange interpolation through (nodes[k], values[k]); nodes must be
// pairwise distinct.
template <class C>
Poly<C> lagrange_interpolate(const std::vector<Rational>& nodes, const std::vector<C>& values) {
    if (nodes.size() != values.size() || nodes.empty())
        throw Error("interpolation needs matching, nonempty nodes and values");
    Poly<C> result;
    for (std::size_t p = 0; p < nodes.size(); ++p) {
        Poly<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            if (q == p) continue;
            basis = basis * Poly<Rational>{-nodes[q], Rational(1)};
            denom *= nodes[p] - nodes[q];
        }
        basis = basis.scaled(denom.inverse());
        // values[p] * basis, lifted coefficientwise into C.
        std::vector<C> lifted;
        lifted.reserve(static_cast<std::size_t>(basis.degree()) + 1);
        for (int k = 0; k <= basis.degree(); ++k)
            lifted.push_back(scale(values[p], basis.coeff_or(k, Rational(0))));
        result += Poly<C>(std::move(lifted));
    }
    return result;
}

}  // namespace bethe
