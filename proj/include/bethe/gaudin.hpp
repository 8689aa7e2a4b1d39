#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/linalg.hpp"
#include "bethe/matrix.hpp"
#include "bethe/poly.hpp"
#include "bethe/seeded_rng.hpp"
#include "bethe/tensor_rep.hpp"

namespace bethe {

struct GaudinConfig {
    int N = 0;
    int n = 0;
    std::vector<Rational> K;  // K_1..K_N
    std::vector<Rational> z;  // z_1..z_n, pairwise distinct

    void validate() const {
        if (N < 1 || n < 1) throw Error("representation parameters must be positive");
        if (static_cast<int>(K.size()) != N) throw Error("expected N twist parameters K");
        if (static_cast<int>(z.size()) != n) throw Error("expected n evaluation points z");
        for (std::size_t a = 0; a < z.size(); ++a)
            for (std::size_t b = a + 1; b < z.size(); ++b)
                if (z[a] == z[b]) throw Error("coincident evaluation points");
    }

    int dim() const { return tensor_dim(N, n); }

    bool all_K_equal() const {
        for (std::size_t i = 1; i < K.size(); ++i)
            if (K[i] != K[0]) return false;
        return true;
    }

    bool all_K_distinct() const {
        for (std::size_t i = 0; i < K.size(); ++i)
            for (std::size_t j = i + 1; j < K.size(); ++j)
                if (K[i] == K[j]) return false;
        return true;
    }
};

// The a-th Gaudin Hamiltonian on the tensor power:
//   H_a = sum_i K_i e_ii^(a) + sum_{i,j} sum_{b != a} e_ij^(a) e_ji^(b) / (z_a - z_b).
inline OperatorMatrix hamiltonian(int a, const GaudinConfig& cfg) {
    cfg.validate();
    if (a < 1 || a > cfg.n) throw Error("tensor factor index out of range");
    OperatorMatrix h(cfg.dim());
    for (int i = 1; i <= cfg.N; ++i)
        h += generator_action(i, i, a, cfg.N, cfg.n).scaled(cfg.K[static_cast<std::size_t>(i - 1)]);
    for (int b = 1; b <= cfg.n; ++b) {
        if (b == a) continue;
        Rational w = (cfg.z[static_cast<std::size_t>(a - 1)] - cfg.z[static_cast<std::size_t>(b - 1)]).inverse();
        for (int i = 1; i <= cfg.N; ++i)
            for (int j = 1; j <= cfg.N; ++j)
                h += (generator_action(i, j, a, cfg.N, cfg.n) *
                      generator_action(j, i, b, cfg.N, cfg.n))
                         .scaled(w);
    }
    return h;
}

struct HamiltonianSet {
    GaudinConfig config;
    std::vector<OperatorMatrix> H;  // H_1..H_n
};

// Builds all n Hamiltonians and checks their defining invariants before
// returning: pairwise commutators vanish and the operators sum to
// sum_i K_i sum_a e_ii^(a).
inline HamiltonianSet hamiltonian_set(const GaudinConfig& cfg) {
    cfg.validate();
    HamiltonianSet set{cfg, {}};
    for (int a = 1; a <= cfg.n; ++a) set.H.push_back(hamiltonian(a, cfg));
    for (std::size_t a = 0; a < set.H.size(); ++a)
        for (std::size_t b = a + 1; b < set.H.size(); ++b)
            if (!commutator(set.H[a], set.H[b]).is_zero())
                throw InternalConsistencyError("Hamiltonians fail to commute");
    OperatorMatrix total(cfg.dim());
    for (const auto& h : set.H) total += h;
    OperatorMatrix expected(cfg.dim());
    for (int i = 1; i <= cfg.N; ++i)
        expected += generator_total(i, i, cfg.N, cfg.n).scaled(cfg.K[static_cast<std::size_t>(i - 1)]);
    if (total != expected)
        throw InternalConsistencyError("Hamiltonian sum rule violated");
    return set;
}

struct SpectrumCertificate {
    bool simple = false;
    std::vector<Rational> witness;  // combination coefficients on success
    int attempts = 0;
    int last_gcd_degree = -1;  // gcd degree of the final failed attempt
};

// Searches seeded rational combinations L = sum_a c_a M_a and certifies a
// simple joint spectrum when the characteristic polynomial of some L is
// squarefree (exact gcd with its derivative is constant). A combination with
// all-distinct eigenvalues forces every joint eigenspace to be a line, so a
// found witness is a sound positive certificate. Exhausting the budget is
// reported, not interpreted: it does not by itself prove non-simplicity.
inline SpectrumCertificate simple_spectrum_certificate(
    const std::vector<OperatorMatrix>& ops,
    const std::optional<std::vector<std::vector<Rational>>>& subspace, std::uint64_t seed,
    int budget = 8) {
    if (ops.empty()) throw Error("certificate needs at least one operator");
    std::vector<OperatorMatrix> mats;
    if (subspace) {
        for (const auto& op : ops) mats.push_back(restrict_to_invariant_subspace(op, *subspace));
    } else {
        mats = ops;
    }
    SeededRng rng(seed);
    SpectrumCertificate cert;
    for (int attempt = 0; attempt < budget; ++attempt) {
        ++cert.attempts;
        std::vector<Rational> c;
        OperatorMatrix L(mats.front().dim());
        for (const auto& m : mats) {
            Rational ca = rng.next_nonzero_rational();
            c.push_back(ca);
            L += m.scaled(ca);
        }
        Poly<Rational> p = charpoly(L);
        Poly<Rational> g = poly_gcd(p, p.derivative());
        if (g.degree() == 0) {
            cert.simple = true;
            cert.witness = std::move(c);
            return cert;
        }
        cert.last_gcd_degree = g.degree();
    }
    return cert;
}

struct JointSpectrumAnalysis {
    bool all_diagonalizable = false;
    int space_dim = 0;
    int algebra_dim = 0;      // dimension of the unital algebra generated by the operators
    int centralizer_dim = 0;  // dimension of the full commutant
    bool simple = false;
    bool has_joint_eigenspace_of_dim_ge_2 = false;
};

namespace detail {

// Incremental exact echelon basis over Q, for span computations.
class EchelonBasis {
  public:
    // Reduces v against the basis; if independent, normalizes and inserts.
    bool insert(std::vector<Rational> v) {
        for (const auto& [pivot, row] : rows_) {
            const Rational& c = v[static_cast<std::size_t>(pivot)];
            if (c.is_zero()) continue;
            Rational f = c;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
        }
        int pivot = -1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_zero()) {
                pivot = static_cast<int>(i);
                break;
            }
        }
        if (pivot < 0) return false;
        Rational inv = v[static_cast<std::size_t>(pivot)].inverse();
        for (auto& x : v) x *= inv;
        rows_.emplace_back(pivot, std::move(v));
        return true;
    }

    std::size_t size() const { return rows_.size(); }

  private:
    std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

inline std::vector<Rational> vectorize(const OperatorMatrix& m) {
    const int d = m.dim();
    std::vector<Rational> v(static_cast<std::size_t>(d) * d, Rational(0));
    for (int r = 0; r < d; ++r)
        for (const auto& [c, val] : m.row(r)) v[static_cast<std::size_t>(r) * d + c] = val;
    return v;
}

}  // namespace detail

// Exact decision procedure for simplicity of the joint spectrum of a
// commuting family, at desk scale, with no eigenvalue factorization:
//   1. each operator is diagonalizable iff its minimal polynomial is
//      squarefree; a commuting diagonalizable family is simultaneously
//      diagonalizable;
//   2. the unital algebra the family generates then has dimension equal to
//      the number of distinct joint eigenvalues, so the spectrum is simple
//      iff that dimension equals the space dimension;
//   3. the commutant has dimension sum of squared joint multiplicities, so
//      commutant dimension > space dimension pins a joint eigenspace of
//      dimension >= 2.
inline JointSpectrumAnalysis joint_spectrum_brute_force(
    const std::vector<OperatorMatrix>& ops,
    const std::optional<std::vector<std::vector<Rational>>>& subspace, int dim_cap = 64) {
    if (ops.empty()) throw Error("analysis needs at least one operator");
    std::vector<OperatorMatrix> mats;
    if (subspace) {
        for (const auto& op : ops) mats.push_back(restrict_to_invariant_subspace(op, *subspace));
    } else {
        mats = ops;
    }
    const int d = mats.front().dim();
    if (d > dim_cap) throw Error("joint spectrum brute force restricted to small dimensions");

    JointSpectrumAnalysis out;
    out.space_dim = d;
    out.all_diagonalizable = true;
    for (const auto& m : mats)
        if (!poly_is_squarefree(minimal_polynomial(m))) out.all_diagonalizable = false;

    // Closure of span{1} under multiplication by the generators.
    detail::EchelonBasis span;
    std::vector<OperatorMatrix> elements{OperatorMatrix::identity(d)};
    span.insert(detail::vectorize(elements.front()));
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& g : mats) {
            OperatorMatrix prod = elements[head] * g;
            if (span.insert(detail::vectorize(prod))) elements.push_back(std::move(prod));
        }
    }
    out.algebra_dim = static_cast<int>(span.size());

    // Commutant dimension: nullity of M -> [M, H_a] stacked over a.
    DenseArray sys(static_cast<int>(mats.size()) * d * d, d * d);
    int base = 0;
    const Rational zero(0);
    for (const auto& h : mats) {
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                // Equation for entry (r, c) of M H - H M.
                for (int k = 0; k < d; ++k) {
                    if (const Rational* p = h.find(k, c)) sys.at(base + r * d + c, r * d + k) += *p;
                    if (const Rational* p = h.find(r, k)) sys.at(base + r * d + c, k * d + c) -= *p;
                }
            }
        }
        base += d * d;
    }
    int rank = static_cast<int>(detail::rref_in_place(sys, d * d).size());
    out.centralizer_dim = d * d - rank;

    out.simple = out.all_diagonalizable && out.algebra_dim == d;
    out.has_joint_eigenspace_of_dim_ge_2 = out.all_diagonalizable && out.centralizer_dim > d;
    return out;
}

}  // namespace bethe
