#pragma once

#include <map>
#include <optional>
#include <utility>

#include "bethe/error.hpp"
#include "bethe/ring_traits.hpp"

namespace bethe {

// Truncated double expansion 1 + sum_{i,j >= 1} c_ij u^{-j} x^{-i} with
// coefficients in a ring C. The constant term is implicitly 1; only nonzero
// coefficients inside the truncation window (i <= max_i, j <= max_j) are
// stored.
template <class C>
class BiSeries {
  public:
    BiSeries(int max_i, int max_j) : max_i_(max_i), max_j_(max_j) {
        if (max_i < 1 || max_j < 1) throw Error("truncation orders must be positive");
    }

    int max_i() const { return max_i_; }
    int max_j() const { return max_j_; }

    void set(int i, int j, C v) {
        check(i, j);
        if (RingTraits<C>::is_zero(v))
            c_.erase({i, j});
        else
            c_.insert_or_assign({i, j}, std::move(v));
    }

    const C* find(int i, int j) const {
        check(i, j);
        auto it = c_.find({i, j});
        return it == c_.end() ? nullptr : &it->second;
    }

    C at(int i, int j, const C& zero) const {
        const C* p = find(i, j);
        return p ? *p : zero;
    }

    const std::map<std::pair<int, int>, C>& coefficients() const { return c_; }

    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        return a.max_i_ == b.max_i_ && a.max_j_ == b.max_j_ && a.c_ == b.c_;
    }
    friend bool operator!=(const BiSeries& a, const BiSeries& b) { return !(a == b); }

    // First (i, j) in lexicographic order where the two series differ, over
    // the common truncation window.
    static std::optional<std::pair<int, int>> first_mismatch(const BiSeries& a, const BiSeries& b) {
        const int mi = std::min(a.max_i_, b.max_i_);
        const int mj = std::min(a.max_j_, b.max_j_);
        for (int i = 1; i <= mi; ++i) {
            for (int j = 1; j <= mj; ++j) {
                const C* pa = a.find(i, j);
                const C* pb = b.find(i, j);
                if (pa == nullptr && pb == nullptr) continue;
                if (pa == nullptr || pb == nullptr || !(*pa == *pb)) return std::make_pair(i, j);
            }
        }
        return std::nullopt;
    }

  private:
    void check(int i, int j) const {
        if (i < 1 || i > max_i_ || j < 1 || j > max_j_)
            throw Error("series coefficient outside truncation window");
    }

    int max_i_, max_j_;
    std::map<std::pair<int, int>, C> c_;
};

}  // namespace bethe
