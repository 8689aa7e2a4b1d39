#pragma once

#include <algorithm>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/linalg.hpp"
#include "bethe/matrix.hpp"
#include "bethe/rational.hpp"

namespace bethe {

// Operators on the n-fold tensor power of the N-dimensional vector
// representation are exact sparse matrices of dimension N^n.
using OperatorMatrix = Matrix<Rational>;

// N^n with a hard cap: everything here is desk-scale exact computation.
inline int tensor_dim(int N, int n) {
    if (N < 1 || n < 1) throw Error("representation parameters must be positive");
    long long d = 1;
    for (int k = 0; k < n; ++k) {
        d *= N;
        if (d > (1 << 22)) throw Error("tensor power dimension exceeds supported size");
    }
    return static_cast<int>(d);
}

// Row-major encoding of a multi-index (i_1..i_n), entries 1..N, with the
// first tensor factor most significant: sum_k (i_k - 1) N^(n-k).
inline int flat_index(const std::vector<int>& multi, int N, int n) {
    if (static_cast<int>(multi.size()) != n) throw Error("multi-index length mismatch");
    int flat = 0;
    for (int k = 0; k < n; ++k) {
        int ik = multi[static_cast<std::size_t>(k)];
        if (ik < 1 || ik > N) throw Error("multi-index entry out of range");
        flat = flat * N + (ik - 1);
    }
    return flat;
}

inline std::vector<int> multi_index(int flat, int N, int n) {
    std::vector<int> multi(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        multi[static_cast<std::size_t>(k)] = flat % N + 1;
        flat /= N;
    }
    return multi;
}

// e_ij acting in tensor factor a (1-based): the matrix of
// 1^(a-1) (x) e_ij (x) 1^(n-a), with e_ij v_j = v_i. Exactly N^(n-1) unit
// entries.
inline OperatorMatrix generator_action(int i, int j, int a, int N, int n) {
    if (i < 1 || i > N || j < 1 || j > N) throw Error("generator index out of range");
    if (a < 1 || a > n) throw Error("tensor factor index out of range");
    const int dim = tensor_dim(N, n);
    OperatorMatrix m(dim);
    for (int col = 0; col < dim; ++col) {
        auto multi = multi_index(col, N, n);
        if (multi[static_cast<std::size_t>(a - 1)] != j) continue;
        multi[static_cast<std::size_t>(a - 1)] = i;
        m.set(flat_index(multi, N, n), col, Rational(1));
    }
    return m;
}

// sum over a of e_ij^(a): the action of the constant-polynomial copy of e_ij.
inline OperatorMatrix generator_total(int i, int j, int N, int n) {
    OperatorMatrix m(tensor_dim(N, n));
    for (int a = 1; a <= n; ++a) m += generator_action(i, j, a, N, n);
    return m;
}

// Residual of the defining relations in one tensor factor:
// [e_ij, e_sk] - delta_js e_ik + delta_ik e_sj, which must vanish.
inline OperatorMatrix commutator_check(int i, int j, int s, int k, int a, int N, int n) {
    OperatorMatrix r = commutator(generator_action(i, j, a, N, n), generator_action(s, k, a, N, n));
    if (j == s) r -= generator_action(i, k, a, N, n);
    if (i == k) r += generator_action(s, j, a, N, n);
    return r;
}

struct WeightSpace {
    std::vector<int> weight;   // lambda_1..lambda_N, summing to n
    std::vector<int> indices;  // flat basis indices, ascending
};

// Partition of the basis by letter content of the multi-index. Subspaces are
// listed in descending lexicographic order of the weight, indices ascending,
// so reports are reproducible bit for bit.
inline std::vector<WeightSpace> weight_subspaces(int N, int n) {
    const int dim = tensor_dim(N, n);
    std::vector<WeightSpace> spaces;
    for (int flat = 0; flat < dim; ++flat) {
        auto multi = multi_index(flat, N, n);
        std::vector<int> weight(static_cast<std::size_t>(N), 0);
        for (int ik : multi) ++weight[static_cast<std::size_t>(ik - 1)];
        auto it = std::find_if(spaces.begin(), spaces.end(),
                               [&](const WeightSpace& w) { return w.weight == weight; });
        if (it == spaces.end()) {
            spaces.push_back(WeightSpace{std::move(weight), {flat}});
        } else {
            it->indices.push_back(flat);
        }
    }
    std::sort(spaces.begin(), spaces.end(), [](const WeightSpace& a, const WeightSpace& b) {
        return std::lexicographical_compare(b.weight.begin(), b.weight.end(), a.weight.begin(),
                                            a.weight.end());
    });
    return spaces;
}

inline const WeightSpace& find_weight_space(const std::vector<WeightSpace>& spaces,
                                            const std::vector<int>& weight) {
    for (const auto& w : spaces)
        if (w.weight == weight) return w;
    throw Error("weight subspace not found");
}

// Exact basis of the subspace of singular vectors: the joint kernel of the
// total raising operators sum_a e_ij^(a), i < j.
inline std::vector<std::vector<Rational>> singular_basis(int N, int n) {
    if (N == 1) {
        // No raising operators: every vector is singular.
        const int dim = tensor_dim(N, n);
        std::vector<std::vector<Rational>> basis;
        for (int i = 0; i < dim; ++i) {
            std::vector<Rational> v(static_cast<std::size_t>(dim), Rational(0));
            v[static_cast<std::size_t>(i)] = Rational(1);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    std::vector<OperatorMatrix> raising;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) raising.push_back(generator_total(i, j, N, n));
    return joint_kernel(raising);
}

}  // namespace bethe
