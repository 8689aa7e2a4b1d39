#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "bethe/rational.hpp"

namespace bethe {

// Default seed used by the CLI and the acceptance suite when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0xBE7E1AB5EEDull;

// Deterministic 64-bit generator (SplitMix64). The update and output
// functions are fixed constants, so streams are identical on every platform;
// reports embed the seed and can be reproduced bit for bit.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-by-modulo integer in [lo, hi], inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // Random rational with numerator in [-20, 20] and denominator in [1, 10].
    Rational next_rational() {
        long num = next_int(-20, 20);
        long den = next_int(1, 10);
        return Rational(num, den);
    }

    Rational next_nonzero_rational() {
        for (;;) {
            Rational r = next_rational();
            if (!r.is_zero()) return r;
        }
    }

    // k pairwise-distinct rationals, drawn in order with rejection.
    std::vector<Rational> distinct_rationals(std::size_t k) {
        std::vector<Rational> out;
        std::set<Rational> seen;
        while (out.size() < k) {
            Rational r = next_rational();
            if (seen.insert(r).second) out.push_back(r);
        }
        return out;
    }

  private:
    std::uint64_t state_;
};

}  // namespace bethe
