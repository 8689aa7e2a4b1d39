#pragma once

#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/matrix.hpp"
#include "bethe/poly.hpp"
#include "bethe/rational.hpp"

namespace bethe {

// Dense rectangular working array for exact Gaussian elimination. This is
// internal plumbing: the public matrix type stays square and sparse, while
// kernel/rank/solve computations run on dense copies.
struct DenseArray {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    DenseArray(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rational(0)) {}

    Rational& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rational& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

namespace detail {

// Reduced row echelon form in place, eliminating only within the first
// `limit_cols` columns (the rest ride along as augmentation). Returns the
// pivot columns in order. Pivot choice is the first nonzero entry, so the
// result is deterministic.
inline std::vector<int> rref_in_place(DenseArray& m, int limit_cols) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < limit_cols && row < m.rows; ++col) {
        int pr = -1;
        for (int r = row; r < m.rows; ++r) {
            if (!m.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Rational inv = m.at(row, col).inverse();
        for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline DenseArray densify(const Matrix<Rational>& m) {
    DenseArray d(m.dim(), m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (const auto& [c, v] : m.row(r)) d.at(r, c) = v;
    return d;
}

}  // namespace detail

inline int rank_exact(const Matrix<Rational>& m) {
    DenseArray d = detail::densify(m);
    return static_cast<int>(detail::rref_in_place(d, d.cols).size());
}

// Exact solution of m * x = rhs for square nonsingular m.
inline std::vector<Rational> linear_solve_exact(const Matrix<Rational>& m,
                                                const std::vector<Rational>& rhs) {
    const int n = m.dim();
    if (static_cast<int>(rhs.size()) != n) throw Error("right-hand side length mismatch");
    DenseArray aug(n, n + 1);
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : m.row(r)) aug.at(r, c) = v;
        aug.at(r, n) = rhs[static_cast<std::size_t>(r)];
    }
    auto pivots = detail::rref_in_place(aug, n);
    if (static_cast<int>(pivots.size()) < n)
        throw SingularSystemError("singular system", static_cast<int>(pivots.size()));
    std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
    for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = aug.at(r, n);
    return x;
}

inline Matrix<Rational> inverse_exact(const Matrix<Rational>& m) {
    const int n = m.dim();
    DenseArray aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : m.row(r)) aug.at(r, c) = v;
        aug.at(r, n + r) = Rational(1);
    }
    auto pivots = detail::rref_in_place(aug, n);
    if (static_cast<int>(pivots.size()) < n)
        throw SingularSystemError("singular system", static_cast<int>(pivots.size()));
    Matrix<Rational> inv(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!aug.at(r, n + c).is_zero()) inv.set(r, c, aug.at(r, n + c));
    return inv;
}

// Basis of the joint kernel of a family of operators, as coordinate vectors.
// The basis comes from the reduced echelon form of the stacked system, with
// free coordinates in ascending index order, so it is reproducible.
inline std::vector<std::vector<Rational>> joint_kernel(const std::vector<Matrix<Rational>>& ops) {
    if (ops.empty()) throw Error("joint kernel of empty operator list");
    const int n = ops.front().dim();
    DenseArray stacked(static_cast<int>(ops.size()) * n, n);
    int base = 0;
    for (const auto& op : ops) {
        if (op.dim() != n) throw Error("matrix dimension mismatch");
        for (int r = 0; r < n; ++r)
            for (const auto& [c, v] : op.row(r)) stacked.at(base + r, c) = v;
        base += n;
    }
    auto pivots = detail::rref_in_place(stacked, n);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
        v[static_cast<std::size_t>(free_col)] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -stacked.at(static_cast<int>(r), free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Matrix of op on an invariant subspace, in the coordinates of `basis`
// (columns). Throws if the subspace is not exactly invariant.
inline Matrix<Rational> restrict_to_invariant_subspace(
    const Matrix<Rational>& op, const std::vector<std::vector<Rational>>& basis) {
    const int n = op.dim();
    const int d = static_cast<int>(basis.size());
    if (d == 0) throw Error("empty subspace basis");
    DenseArray aug(n, d + d);
    for (int j = 0; j < d; ++j) {
        const auto& b = basis[static_cast<std::size_t>(j)];
        if (static_cast<int>(b.size()) != n) throw Error("basis vector length mismatch");
        auto img = op.apply(b);
        for (int r = 0; r < n; ++r) {
            aug.at(r, j) = b[static_cast<std::size_t>(r)];
            aug.at(r, d + j) = img[static_cast<std::size_t>(r)];
        }
    }
    auto pivots = detail::rref_in_place(aug, d);
    if (static_cast<int>(pivots.size()) != d) throw Error("subspace basis is linearly dependent");
    // Rows below the pivot block must vanish on the augmented side, otherwise
    // some image vector left the span.
    for (int r = d; r < n; ++r)
        for (int j = 0; j < d; ++j)
            if (!aug.at(r, d + j).is_zero()) throw Error("non-invariant subspace");
    Matrix<Rational> out(d);
    for (int r = 0; r < d; ++r)
        for (int j = 0; j < d; ++j)
            if (!aug.at(r, d + j).is_zero()) out.set(r, j, aug.at(r, d + j));
    return out;
}

// Membership of v in span(basis).
inline bool in_span(const std::vector<std::vector<Rational>>& basis,
                    const std::vector<Rational>& v) {
    const int n = static_cast<int>(v.size());
    const int d = static_cast<int>(basis.size());
    DenseArray aug(n, d + 1);
    for (int j = 0; j < d; ++j)
        for (int r = 0; r < n; ++r) aug.at(r, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    for (int r = 0; r < n; ++r) aug.at(r, d) = v[static_cast<std::size_t>(r)];
    auto with = detail::rref_in_place(aug, d + 1);
    // v lies in the span iff the last column is not a pivot.
    for (int p : with)
        if (p == d) return false;
    return true;
}

// Monic minimal polynomial of an exact matrix: the first linear dependence
// among I, M, M^2, ... found by exact elimination.
inline Poly<Rational> minimal_polynomial(const Matrix<Rational>& m) {
    const int n = m.dim();
    const int len = n * n;
    std::vector<Matrix<Rational>> powers;
    powers.push_back(Matrix<Rational>::identity(n));
    for (int k = 1; k <= n; ++k) powers.push_back(powers.back() * m);
    for (int deg = 1; deg <= n; ++deg) {
        // Solve sum_{j<deg} c_j M^j = M^deg.
        DenseArray aug(len, deg + 1);
        for (int j = 0; j <= deg; ++j) {
            const auto& p = powers[static_cast<std::size_t>(j)];
            for (int r = 0; r < n; ++r)
                for (const auto& [c, v] : p.row(r)) aug.at(r * n + c, j) = v;
        }
        auto pivots = detail::rref_in_place(aug, deg);
        bool consistent = true;
        for (int r = static_cast<int>(pivots.size()); r < len && consistent; ++r)
            if (!aug.at(r, deg).is_zero()) consistent = false;
        if (!consistent) continue;
        std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1, Rational(0));
        for (std::size_t r = 0; r < pivots.size(); ++r)
            coeffs[static_cast<std::size_t>(pivots[r])] = -aug.at(static_cast<int>(r), deg);
        coeffs[static_cast<std::size_t>(deg)] = Rational(1);
        return Poly<Rational>(std::move(coeffs));
    }
    throw InternalConsistencyError("minimal polynomial search exceeded dimension bound");
}

}  // namespace bethe
