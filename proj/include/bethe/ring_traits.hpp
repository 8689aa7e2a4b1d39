#pragma once

#include "bethe/rational.hpp"

namespace bethe {

template <class C>
class Matrix;

// Uniform access to ring structure for coefficient types. Matrices need a
// shape to build their additive/multiplicative identities, so zero/one take
// a "like" sample of the right shape.
template <class C>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
};

// Scaling by the base field; overloaded per coefficient type.
inline Rational scale(const Rational& c, const Rational& s) { return c * s; }

}  // namespace bethe
