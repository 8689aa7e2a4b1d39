#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "bethe/biseries.hpp"
#include "bethe/diffop.hpp"
#include "bethe/error.hpp"
#include "bethe/gaudin.hpp"
#include "bethe/matrix.hpp"
#include "bethe/poly.hpp"
#include "bethe/ratfun.hpp"
#include "bethe/tensor_rep.hpp"

namespace bethe {

// Elementary symmetric polynomials e_0..e_N of the values K.
inline std::vector<Rational> elementary_symmetric(const std::vector<Rational>& K) {
    std::vector<Rational> e{Rational(1)};
    for (const auto& k : K) {
        e.push_back(Rational(0));
        for (std::size_t s = e.size() - 1; s >= 1; --s) e[s] += e[s - 1] * k;
    }
    return e;
}

// Complete homogeneous symmetric polynomials h_0..h_max of the values K,
// from the generating series prod_i 1/(1 - K_i t).
inline std::vector<Rational> complete_homogeneous(const std::vector<Rational>& K, int max_deg) {
    std::vector<Rational> h(static_cast<std::size_t>(max_deg) + 1, Rational(0));
    h[0] = Rational(1);
    for (const auto& k : K)
        for (int m = 1; m <= max_deg; ++m) h[static_cast<std::size_t>(m)] += h[static_cast<std::size_t>(m - 1)] * k;
    return h;
}

// The current e_ij(u) = sum_a e_ij^(a) / (u - z_a) acting on the tensor
// product of evaluation modules: pure simple poles, no polynomial part.
inline MatRatFun current(int i, int j, const GaudinConfig& cfg) {
    cfg.validate();
    OperatorMatrix zero(cfg.dim());
    MatRatFun f(cfg.z, zero);
    for (int a = 1; a <= cfg.n; ++a)
        f.add_pole_term(a - 1, 1, generator_action(i, j, a, cfg.N, cfg.n));
    return f;
}

struct UniversalOperator {
    GaudinConfig config;
    DiffOp op;                  // monic of order N
    std::vector<MatRatFun> B;   // B[i-1] = B_i(u) for i = 1..N
};

// Row determinant of the N x N operator matrix with (i,i) entry
// d - K_i - e_ii(u) and (i,j) entry -e_ji(u) for i != j: each permutation
// term multiplies its factors strictly in row order. The result is monic of
// order N; the lower coefficients B_i(u) generate the Bethe algebra.
inline UniversalOperator universal_operator(const GaudinConfig& cfg) {
    cfg.validate();
    const int N = cfg.N;
    OperatorMatrix zero(cfg.dim());
    MatRatFun proto(cfg.z, zero);

    std::vector<std::vector<DiffOp>> entry;
    for (int i = 1; i <= N; ++i) {
        std::vector<DiffOp> row;
        for (int j = 1; j <= N; ++j) {
            if (i == j) {
                MatRatFun c0 = MatRatFun::constant(
                    cfg.z, OperatorMatrix::identity(cfg.dim()).scaled(-cfg.K[static_cast<std::size_t>(i - 1)]),
                    zero);
                c0 -= current(i, i, cfg);
                row.push_back(DiffOp::derivation(proto) + DiffOp::multiplication(std::move(c0)));
            } else {
                row.push_back(DiffOp::multiplication(current(j, i, cfg).scaled(Rational(-1))));
            }
        }
        entry.push_back(std::move(row));
    }

    DiffOp rdet(proto);
    std::vector<int> perm(static_cast<std::size_t>(N));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        DiffOp term = entry[0][static_cast<std::size_t>(perm[0])];
        for (int r = 1; r < N; ++r) term = term * entry[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])];
        if (detail::permutation_sign(perm) < 0) term = -term;
        rdet += term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (rdet.order() != N) throw InternalConsistencyError("universal operator is not of order N");
    MatRatFun leading = MatRatFun::constant(cfg.z, OperatorMatrix::identity(cfg.dim()), zero);
    if (!(rdet.coeff(N) == leading))
        throw InternalConsistencyError("universal operator is not monic");

    UniversalOperator out{cfg, rdet, {}};
    for (int i = 1; i <= N; ++i) out.B.push_back(rdet.coeff(N - i));
    return out;
}

// Psi_i(u), the coefficient of x^{-i} in
//   (x^N + sum_s B_s(u) x^{N-s}) prod_i (x - K_i)^{-1},
// expanded by the formal geometric series in x^{-1}. This is the finite sum
// sum_{s=0..min(N,i)} B_s(u) h_{i-s}(K), a closed-form rational function.
inline MatRatFun psi_coefficient_function(const UniversalOperator& uop, int i) {
    if (i < 1) throw Error("series index must be positive");
    const auto& cfg = uop.config;
    auto h = complete_homogeneous(cfg.K, i);
    OperatorMatrix zero(cfg.dim());
    MatRatFun acc = MatRatFun::constant(
        cfg.z, OperatorMatrix::identity(cfg.dim()).scaled(h[static_cast<std::size_t>(i)]), zero);
    for (int s = 1; s <= std::min(cfg.N, i); ++s)
        acc += uop.B[static_cast<std::size_t>(s - 1)].scaled(h[static_cast<std::size_t>(i - s)]);
    return acc;
}

// Coefficients Psi_ij of u^{-j} x^{-i} for 1 <= i <= I, 1 <= j <= J. The
// u-expansion of each closed-form Psi_i(u) is exact, so no truncated
// arithmetic enters. The constant u-term of every Psi_i vanishes identically;
// this is asserted.
inline BiSeries<OperatorMatrix> psi_biseries(const UniversalOperator& uop, int I, int J) {
    BiSeries<OperatorMatrix> out(I, J);
    for (int i = 1; i <= I; ++i) {
        MatRatFun psi_i = psi_coefficient_function(uop, i);
        if (!psi_i.infinity_coeff(0).is_zero())
            throw InternalConsistencyError("nonzero constant term in a Psi coefficient series");
        for (int j = 1; j <= J; ++j) out.set(i, j, psi_i.infinity_coeff(j));
    }
    return out;
}

// Coefficients of Psi-dagger(x) = -sum_i Psi_i1 x^{-i}; index k holds the
// coefficient of x^{-(k+1)}.
inline std::vector<OperatorMatrix> psi_dagger(const BiSeries<OperatorMatrix>& psi, int I, int dim) {
    if (I > psi.max_i()) throw Error("requested order exceeds computed window");
    std::vector<OperatorMatrix> out;
    for (int i = 1; i <= I; ++i) {
        const OperatorMatrix* c = psi.find(i, 1);
        out.push_back(c ? c->scaled(Rational(-1)) : OperatorMatrix(dim));
    }
    return out;
}

struct RegularizedOperator {
    GaudinConfig config;
    // A[i] is the coefficient of d^i as an exact polynomial in u of degree <= n;
    // A[i] coefficient a is the constant operator A_{ia}.
    std::vector<Poly<OperatorMatrix>> A;

    OperatorMatrix coeff(int i, int a) const {
        return A[static_cast<std::size_t>(i)].coeff_or(a, OperatorMatrix(config.dim()));
    }
};

// P(u) * D written as sum A_{ia} u^a d^i. All pole terms must cancel exactly;
// surviving poles indicate an upstream bug and raise an error.
inline RegularizedOperator regularized_operator(const UniversalOperator& uop) {
    const auto& cfg = uop.config;
    OperatorMatrix zero(cfg.dim());
    Poly<Rational> P = poly_from_roots(cfg.z);
    std::vector<OperatorMatrix> lifted;
    for (int k = 0; k <= P.degree(); ++k)
        lifted.push_back(OperatorMatrix::identity(cfg.dim()).scaled(P.coeff_or(k, Rational(0))));
    MatRatFun P_fun = MatRatFun::from_polynomial(cfg.z, Poly<OperatorMatrix>(std::move(lifted)), zero);

    RegularizedOperator out{cfg, {}};
    for (int i = 0; i <= cfg.N; ++i) {
        MatRatFun coeff_i = P_fun * uop.op.coeff(i);
        if (!coeff_i.pole_terms().empty()) throw Error("regularization failed");
        if (coeff_i.polynomial_part().degree() > cfg.n)
            throw InternalConsistencyError("regularized coefficient exceeds degree n");
        out.A.push_back(coeff_i.polynomial_part());
    }
    return out;
}

}  // namespace bethe
