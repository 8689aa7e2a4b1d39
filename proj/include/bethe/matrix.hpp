#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/poly.hpp"
#include "bethe/rational.hpp"
#include "bethe/ring_traits.hpp"

namespace bethe {

// Square sparse matrix over a commutative coefficient ring C. Stored entries
// are always nonzero; rows hold column-sorted maps, so iteration order (and
// every serialization derived from it) is row-major and deterministic.
//
// The tensor-algebra operators this library manipulates have O(dim) nonzero
// entries in dim x dim matrices, which is what the sparse layout is for.
template <class C>
class Matrix {
  public:
    explicit Matrix(int dim) : dim_(dim), rows_(static_cast<std::size_t>(dim)) {
        if (dim < 0) throw Error("negative matrix dimension");
    }

    static Matrix identity(int dim, const C& one) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m.set(i, i, one);
        return m;
    }

    static Matrix identity(int dim)
        requires std::is_same_v<C, Rational>
    {
        return identity(dim, Rational(1));
    }

    int dim() const { return dim_; }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
    }

    std::size_t nnz() const {
        std::size_t t = 0;
        for (const auto& r : rows_) t += r.size();
        return t;
    }

    void set(int r, int c, C v) {
        check_index(r, c);
        if (RingTraits<C>::is_zero(v))
            rows_[static_cast<std::size_t>(r)].erase(c);
        else
            rows_[static_cast<std::size_t>(r)].insert_or_assign(c, std::move(v));
    }

    void add_to(int r, int c, const C& v) {
        check_index(r, c);
        auto& row = rows_[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        if (it == row.end()) {
            if (!RingTraits<C>::is_zero(v)) row.emplace(c, v);
            return;
        }
        it->second += v;
        if (RingTraits<C>::is_zero(it->second)) row.erase(it);
    }

    // Pointer to the stored entry, or nullptr when the entry is zero.
    const C* find(int r, int c) const {
        check_index(r, c);
        const auto& row = rows_[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        return it == row.end() ? nullptr : &it->second;
    }

    C at(int r, int c, const C& zero) const {
        const C* p = find(r, c);
        return p ? *p : zero;
    }

    Rational at(int r, int c) const
        requires std::is_same_v<C, Rational>
    {
        return at(r, c, Rational(0));
    }

    const std::map<int, C>& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

    // First stored (nonzero) entry in row-major order; nullptr if none.
    const C* any_entry() const {
        for (const auto& r : rows_)
            if (!r.empty()) return &r.begin()->second;
        return nullptr;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_dim(o);
        for (int r = 0; r < dim_; ++r)
            for (const auto& [c, v] : o.rows_[static_cast<std::size_t>(r)]) add_to(r, c, v);
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_dim(o);
        for (int r = 0; r < dim_; ++r)
            for (const auto& [c, v] : o.rows_[static_cast<std::size_t>(r)]) add_to(r, c, -v);
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix operator-() const {
        Matrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (const auto& [c, v] : rows_[static_cast<std::size_t>(i)]) r.set(i, c, -v);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same_dim(b);
        Matrix out(a.dim_);
        for (int r = 0; r < a.dim_; ++r) {
            auto& out_row = out.rows_[static_cast<std::size_t>(r)];
            for (const auto& [k, av] : a.rows_[static_cast<std::size_t>(r)]) {
                for (const auto& [c, bv] : b.rows_[static_cast<std::size_t>(k)]) {
                    C prod = av * bv;
                    auto it = out_row.find(c);
                    if (it == out_row.end()) {
                        if (!RingTraits<C>::is_zero(prod)) out_row.emplace(c, std::move(prod));
                    } else {
                        it->second += prod;
                        if (RingTraits<C>::is_zero(it->second)) out_row.erase(it);
                    }
                }
            }
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix scaled(const Rational& s) const {
        Matrix r(dim_);
        if (s.is_zero()) return r;
        for (int i = 0; i < dim_; ++i)
            for (const auto& [c, v] : rows_[static_cast<std::size_t>(i)])
                r.set(i, c, bethe::scale(v, s));
        return r;
    }

    C trace(const C& zero) const {
        C t = zero;
        for (int i = 0; i < dim_; ++i)
            if (const C* p = find(i, i)) t += *p;
        return t;
    }

    Rational trace() const
        requires std::is_same_v<C, Rational>
    {
        return trace(Rational(0));
    }

    // Apply to a coordinate vector (matrix * column).
    std::vector<Rational> apply(const std::vector<Rational>& x) const
        requires std::is_same_v<C, Rational>
    {
        if (static_cast<int>(x.size()) != dim_) throw Error("vector length mismatch");
        std::vector<Rational> y(static_cast<std::size_t>(dim_), Rational(0));
        for (int r = 0; r < dim_; ++r)
            for (const auto& [c, v] : rows_[static_cast<std::size_t>(r)])
                y[static_cast<std::size_t>(r)] += v * x[static_cast<std::size_t>(c)];
        return y;
    }

  private:
    void check_index(int r, int c) const {
        if (r < 0 || c < 0 || r >= dim_ || c >= dim_) throw Error("matrix index out of range");
    }
    void check_same_dim(const Matrix& o) const {
        if (dim_ != o.dim_) throw Error("matrix dimension mismatch");
    }

    int dim_;
    std::vector<std::map<int, C>> rows_;
};

template <class C>
struct RingTraits<Matrix<C>> {
    static bool is_zero(const Matrix<C>& m) { return m.is_zero(); }
    static Matrix<C> zero(const Matrix<C>& like) { return Matrix<C>(like.dim()); }
    static Matrix<C> one(const Matrix<C>& like) {
        const C* sample = like.any_entry();
        if (!sample) throw Error("cannot shape a ring identity from an empty matrix");
        return Matrix<C>::identity(like.dim(), RingTraits<C>::one(*sample));
    }
};

// Rational entries need no shape sample.
template <>
struct RingTraits<Matrix<Rational>> {
    static bool is_zero(const Matrix<Rational>& m) { return m.is_zero(); }
    static Matrix<Rational> zero(const Matrix<Rational>& like) { return Matrix<Rational>(like.dim()); }
    static Matrix<Rational> one(const Matrix<Rational>& like) {
        return Matrix<Rational>::identity(like.dim(), Rational(1));
    }
};

template <class C>
Matrix<C> scale(const Matrix<C>& m, const Rational& s) {
    return m.scaled(s);
}

template <class C>
Matrix<C> commutator(const Matrix<C>& a, const Matrix<C>& b) {
    return a * b - b * a;
}

namespace detail {

inline int permutation_sign(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// Characteristic polynomial det(x*1 - A) by the Berkowitz algorithm:
// division-free, valid over any commutative ring. `one` supplies the ring
// identity of the right shape.
template <class C>
Poly<C> charpoly_berkowitz(const Matrix<C>& a, const C& one) {
    const int d = a.dim();
    const C zero = RingTraits<C>::zero(one);
    if (d == 0) return Poly<C>(one);
    // coeffs[k] multiplies x^(d-k); built up one principal minor at a time.
    std::vector<C> coeffs{one, -a.at(0, 0, zero)};
    for (int r = 2; r <= d; ++r) {
        const int m = r - 1;
        // Toeplitz column q_0..q_r for the r-th principal minor.
        std::vector<C> q;
        q.reserve(static_cast<std::size_t>(r) + 1);
        q.push_back(one);
        q.push_back(-a.at(m, m, zero));
        std::vector<C> w(static_cast<std::size_t>(m), zero);
        for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = a.at(i, m, zero);
        for (int k = 2; k <= r; ++k) {
            C dot = zero;
            for (int i = 0; i < m; ++i)
                if (const C* p = a.find(m, i)) dot += *p * w[static_cast<std::size_t>(i)];
            q.push_back(-dot);
            if (k < r) {
                std::vector<C> next(static_cast<std::size_t>(m), zero);
                for (int i = 0; i < m; ++i)
                    for (const auto& [c, v] : a.row(i))
                        if (c < m) next[static_cast<std::size_t>(i)] += v * w[static_cast<std::size_t>(c)];
                w = std::move(next);
            }
        }
        std::vector<C> updated(static_cast<std::size_t>(r) + 1, zero);
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j < r && j <= i; ++j)
                if (i - j <= r) updated[static_cast<std::size_t>(i)] += q[static_cast<std::size_t>(i - j)] * coeffs[static_cast<std::size_t>(j)];
        coeffs = std::move(updated);
    }
    // coeffs[k] multiplies x^(d-k); Poly stores by ascending degree.
    std::vector<C> asc(coeffs.rbegin(), coeffs.rend());
    return Poly<C>(std::move(asc));
}

inline Poly<Rational> charpoly(const Matrix<Rational>& a) {
    return charpoly_berkowitz(a, Rational(1));
}

// Division-free determinant. Entries must commute pairwise (caller contract).
// Dimension <= 6 uses the Leibniz expansion with factors multiplied in row
// order; larger matrices go through Berkowitz.
template <class C>
C det_division_free(const Matrix<C>& a) {
    const int d = a.dim();
    if (d == 0) throw Error("determinant of empty matrix");
    const C* sample = a.any_entry();
    if (!sample) {
        if constexpr (std::is_same_v<C, Rational>)
            return Rational(0);
        else
            throw Error("determinant of a zero matrix over a shaped ring");
    }
    const C zero = RingTraits<C>::zero(*sample);
    if (d <= 6) {
        std::vector<int> perm(static_cast<std::size_t>(d));
        std::iota(perm.begin(), perm.end(), 0);
        C acc = zero;
        do {
            C term = zero;
            bool alive = true;
            for (int r = 0; r < d && alive; ++r) {
                const C* p = a.find(r, perm[static_cast<std::size_t>(r)]);
                if (!p) {
                    alive = false;
                } else if (r == 0) {
                    term = *p;
                } else {
                    term = term * *p;
                }
            }
            if (!alive) continue;
            if (detail::permutation_sign(perm) < 0) term = -term;
            acc += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return acc;
    }
    const C one = RingTraits<C>::one(*sample);
    Poly<C> p = charpoly_berkowitz(a, one);
    // det(A) = (-1)^d * p(0).
    C c0 = p.coeff_or(0, zero);
    return d % 2 == 0 ? c0 : -c0;
}

}  // namespace bethe
