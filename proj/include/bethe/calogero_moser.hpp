#pragma once

#include <utility>
#include <vector>

#include "bethe/biseries.hpp"
#include "bethe/error.hpp"
#include "bethe/linalg.hpp"
#include "bethe/matrix.hpp"
#include "bethe/poly.hpp"
#include "bethe/rational.hpp"
#include "bethe/ring_traits.hpp"

namespace bethe {

// Multiplicative inverse inside the coefficient ring. For matrices this is
// the exact matrix inverse; elements of a commutative subalgebra have their
// inverses in the commutant, which is all the callers need.
inline Rational ring_inverse(const Rational& x) {
    if (x.is_zero()) throw Error("evaluation at spectral point");
    return x.inverse();
}

inline Matrix<Rational> ring_inverse(const Matrix<Rational>& m) {
    try {
        return inverse_exact(m);
    } catch (const SingularSystemError&) {
        throw Error("evaluation at spectral point");
    }
}

// A pair of equal-sized square matrices over a commutative coefficient ring;
// the raw datum behind a Calogero-Moser point. Membership in the n-th
// Calogero-Moser space means rank([X, Y] + 1) = 1, checked separately.
template <class C>
struct CMPair {
    Matrix<C> X, Y;
};

// The matrices attached to evaluation points z and values h: Z = diag(z) and
// Q with diagonal h_a, off-diagonal (a, b) entry 1/(z_b - z_a).
template <class C>
struct QZData {
    std::vector<Rational> z;
    std::vector<C> h;
    Matrix<C> Q;
    Matrix<C> Z;

    CMPair<C> pair() const { return CMPair<C>{Q, Z}; }
};

namespace detail {

template <class C>
C ring_one_from(const std::vector<C>& samples) {
    for (const auto& s : samples) {
        if constexpr (std::is_same_v<C, Rational>) {
            (void)s;
            return Rational(1);
        } else {
            return RingTraits<C>::one(s);
        }
    }
    throw Error("cannot shape a ring identity without a sample");
}

}  // namespace detail

template <class C>
QZData<C> build_qz(const std::vector<Rational>& z, std::vector<C> h) {
    const int n = static_cast<int>(z.size());
    if (n < 1 || h.size() != z.size()) throw Error("need matching nonempty z and h lists");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (z[static_cast<std::size_t>(a)] == z[static_cast<std::size_t>(b)])
                throw Error("coincident evaluation points");
    C one = detail::ring_one_from(h);
    QZData<C> data{z, std::move(h), Matrix<C>(n), Matrix<C>(n)};
    for (int a = 0; a < n; ++a) {
        data.Q.set(a, a, data.h[static_cast<std::size_t>(a)]);
        data.Z.set(a, a, scale(one, z[static_cast<std::size_t>(a)]));
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            Rational w = (z[static_cast<std::size_t>(b)] - z[static_cast<std::size_t>(a)]).inverse();
            data.Q.set(a, b, scale(one, w));
        }
    }
    return data;
}

// rank([X, Y] + 1) == 1, by exact elimination.
inline bool rank_one_check(const Matrix<Rational>& X, const Matrix<Rational>& Y) {
    Matrix<Rational> m = commutator(X, Y) + Matrix<Rational>::identity(X.dim());
    return rank_exact(m) == 1;
}

namespace detail {

// x*1 - M over the ring.
template <class C>
Matrix<C> shift_scalar(const Rational& x, const Matrix<C>& m, const C& one) {
    Matrix<C> r = -m;
    for (int i = 0; i < m.dim(); ++i) r.add_to(i, i, scale(one, x));
    return r;
}

}  // namespace detail

// phi(x*) = det(x* - Q), division-free.
template <class C>
C phi_function(const Rational& x, const QZData<C>& data) {
    C one = detail::ring_one_from(data.h);
    return det_division_free(detail::shift_scalar(x, data.Q, one));
}

// det(x - Q) as an exact polynomial in x (degree n, monic), recovered by
// Lagrange interpolation from n+1 determinant evaluations.
template <class C>
Poly<C> phi_polynomial(const QZData<C>& data) {
    const int n = static_cast<int>(data.z.size());
    std::vector<Rational> nodes;
    std::vector<C> values;
    for (int t = 0; t <= n; ++t) {
        nodes.push_back(Rational(t));
        values.push_back(phi_function(Rational(t), data));
    }
    return lagrange_interpolate(nodes, values);
}

// psi(u*, x*) = det(1 - (u* - Z)^{-1} (x* - Q)^{-1}), computed in the
// cleared-denominator form
//   det((u* - Z)(x* - Q) - 1) * inv(det(x* - Q)) / prod_a (u* - z_a),
// which needs one ring inverse and no entrywise matrix inversion.
template <class C>
C psi_function(const Rational& u, const Rational& x, const QZData<C>& data) {
    for (const auto& za : data.z)
        if (u == za) throw Error("evaluation point coincides with a pole");
    C one = detail::ring_one_from(data.h);
    Matrix<C> uz = detail::shift_scalar(u, data.Z, one);
    Matrix<C> xq = detail::shift_scalar(x, data.Q, one);
    Matrix<C> m = uz * xq - Matrix<C>::identity(data.Q.dim(), one);
    C numerator = det_division_free(m);
    C phi_inv = ring_inverse(phi_function(x, data));
    Rational P(1);
    for (const auto& za : data.z) P *= u - za;
    return scale(numerator * phi_inv, P.inverse());
}

// psi-dagger(x*) = tr((x* - Q)^{-1}) evaluated as tr(adj(x* - Q)) / det(x* - Q);
// the adjugate trace is a sum of principal-minor determinants.
template <class C>
C psi_dag_function(const Rational& x, const QZData<C>& data) {
    const int n = data.Q.dim();
    C one = detail::ring_one_from(data.h);
    Matrix<C> a = detail::shift_scalar(x, data.Q, one);
    C adj_trace = RingTraits<C>::zero(one);
    if (n == 1) {
        adj_trace = one;
    } else {
        for (int drop = 0; drop < n; ++drop) {
            Matrix<C> minor(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == drop) continue;
                for (const auto& [c, v] : a.row(r)) {
                    if (c == drop) continue;
                    minor.set(r < drop ? r : r - 1, c < drop ? c : c - 1, v);
                }
            }
            adj_trace += det_division_free(minor);
        }
    }
    return adj_trace * ring_inverse(det_division_free(a));
}

// Leading coefficients of the expansion tr((x - Q)^{-1}) = sum_m tr(Q^m) x^{-m-1}:
// index m of the result holds tr(Q^m), the coefficient of x^{-(m+1)}.
template <class C>
std::vector<C> psi_dag_series(const QZData<C>& data, int terms) {
    C one = detail::ring_one_from(data.h);
    C zero = RingTraits<C>::zero(one);
    std::vector<C> out;
    Matrix<C> power = Matrix<C>::identity(data.Q.dim(), one);
    for (int m = 0; m < terms; ++m) {
        out.push_back(power.trace(zero));
        power = power * data.Q;
    }
    return out;
}

inline Rational vandermonde_delta(const std::vector<Rational>& z) {
    Rational d(1);
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = a + 1; b < z.size(); ++b) d *= z[b] - z[a];
    return d;
}

// S_ab = z_b^(a-1) (1-based), the Vandermonde matrix whose determinant is
// the discriminant product.
inline Matrix<Rational> vandermonde_matrix(const std::vector<Rational>& z) {
    const int n = static_cast<int>(z.size());
    Matrix<Rational> s(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s.set(a, b, pow(z[static_cast<std::size_t>(b)], a));
    return s;
}

namespace detail {

// k-th derivative of (x + mu) e^{zx} with the exponential stripped:
// ((x + mu) z^k + k z^(k-1)).
inline Rational wave_row_entry(const Rational& x, const Rational& mu, const Rational& z, int k) {
    Rational v = (x + mu) * pow(z, k);
    if (k >= 1) v += pow(z, k - 1) * Rational(k);
    return v;
}

}  // namespace detail

// W(u*, x*): the Wronskian of (x + mu_a) e^{z_a x}, a = 1..n, together with
// e^{ux}, at x = x*, with the exponential prefactor cancelled analytically.
// Every matrix entry is rational because each derivative of a row function is
// polynomial times its own exponential.
inline Rational wronskian_bivariate(const std::vector<Rational>& z, const std::vector<Rational>& mu,
                                    const Rational& u, const Rational& x) {
    const int n = static_cast<int>(z.size());
    if (static_cast<int>(mu.size()) != n) throw Error("need matching z and mu lists");
    Matrix<Rational> w(n + 1);
    for (int a = 0; a < n; ++a)
        for (int k = 0; k <= n; ++k)
            w.set(a, k, detail::wave_row_entry(x, mu[static_cast<std::size_t>(a)], z[static_cast<std::size_t>(a)], k));
    for (int k = 0; k <= n; ++k) w.set(n, k, pow(u, k));
    return det_division_free(w);
}

// W_0(x*): the Wronskian of the n wave functions alone, exponentials cancelled.
inline Rational wronskian_w0(const std::vector<Rational>& z, const std::vector<Rational>& mu,
                             const Rational& x) {
    const int n = static_cast<int>(z.size());
    if (static_cast<int>(mu.size()) != n) throw Error("need matching z and mu lists");
    Matrix<Rational> w(n);
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k)
            w.set(a, k, detail::wave_row_entry(x, mu[static_cast<std::size_t>(a)], z[static_cast<std::size_t>(a)], k));
    return det_division_free(w);
}

// Values h_a = -mu_a - sum_{b != a} 1/(z_a - z_b) pairing the Wronskian side
// with the (Q, Z) side, and its inverse.
inline std::vector<Rational> h_from_mu(const std::vector<Rational>& z, const std::vector<Rational>& mu) {
    std::vector<Rational> h;
    for (std::size_t a = 0; a < z.size(); ++a) {
        Rational v = -mu[a];
        for (std::size_t b = 0; b < z.size(); ++b)
            if (b != a) v -= (z[a] - z[b]).inverse();
        h.push_back(v);
    }
    return h;
}

inline std::vector<Rational> mu_from_h(const std::vector<Rational>& z, const std::vector<Rational>& h) {
    std::vector<Rational> mu;
    for (std::size_t a = 0; a < z.size(); ++a) {
        Rational v = -h[a];
        for (std::size_t b = 0; b < z.size(); ++b)
            if (b != a) v -= (z[a] - z[b]).inverse();
        mu.push_back(v);
    }
    return mu;
}

// One factor of a trace word: letter 'X' or 'Y' raised to a power.
struct WordFactor {
    char letter;
    int exponent;
};

// tr(X^{m1} Y^{m2} X^{m3} ...) in the declared ring.
template <class C>
C trace_word(const std::vector<WordFactor>& word, const CMPair<C>& pair) {
    const int n = pair.X.dim();
    if (pair.Y.dim() != n) throw Error("matrix dimension mismatch");
    C one = [&] {
        if constexpr (std::is_same_v<C, Rational>) {
            return Rational(1);
        } else {
            const C* s = pair.X.any_entry();
            if (!s) s = pair.Y.any_entry();
            if (!s) throw Error("cannot shape a ring identity without a sample");
            return RingTraits<C>::one(*s);
        }
    }();
    Matrix<C> acc = Matrix<C>::identity(n, one);
    for (const auto& f : word) {
        if (f.exponent < 0) throw Error("trace word exponents must be nonnegative");
        const Matrix<C>& base = f.letter == 'X' ? pair.X : pair.Y;
        if (f.letter != 'X' && f.letter != 'Y') throw Error("trace word letters must be X or Y");
        for (int e = 0; e < f.exponent; ++e) acc = acc * base;
    }
    return acc.trace(RingTraits<C>::zero(one));
}

// Expansion coefficients of det(1 - (u - Y)^{-1}(x - X)^{-1}) at infinity:
//   1 + sum_{i,j >= 1} c_ij u^{-j} x^{-i}.
// Route: (1) the bivariate polynomial G(u, x) = det((u - Y)(x - X) - 1) has
// degree <= n in each variable and is recovered exactly from determinant
// values on an (n+1) x (n+1) grid; (2) dividing by the characteristic
// polynomials det(u - Y) and det(x - X) becomes multiplication by their
// inverse power series at infinity, with coefficients in the same
// commutative ring.
template <class C>
BiSeries<C> phi0_expansion(const CMPair<C>& pair, int I, int J) {
    const int n = pair.X.dim();
    if (pair.Y.dim() != n) throw Error("matrix dimension mismatch");
    C one = [&] {
        if constexpr (std::is_same_v<C, Rational>) {
            return Rational(1);
        } else {
            const C* s = pair.X.any_entry();
            if (!s) s = pair.Y.any_entry();
            if (!s) throw Error("cannot shape a ring identity without a sample");
            return RingTraits<C>::one(*s);
        }
    }();
    const C zero = RingTraits<C>::zero(one);

    std::vector<Rational> nodes;
    for (int t = 0; t <= n; ++t) nodes.push_back(Rational(t));

    // Grid determinants of (u - Y)(x - X) - 1; pure polynomial evaluations.
    std::vector<Poly<C>> rows_in_x;
    for (int p = 0; p <= n; ++p) {
        Matrix<C> uy = detail::shift_scalar(nodes[static_cast<std::size_t>(p)], pair.Y, one);
        std::vector<C> values;
        for (int q = 0; q <= n; ++q) {
            Matrix<C> xx = detail::shift_scalar(nodes[static_cast<std::size_t>(q)], pair.X, one);
            Matrix<C> m = uy * xx - Matrix<C>::identity(n, one);
            values.push_back(det_division_free(m));
        }
        rows_in_x.push_back(lagrange_interpolate(nodes, values));
    }
    // g[r][s]: coefficient of u^r x^s.
    std::vector<std::vector<C>> g(static_cast<std::size_t>(n) + 1,
                                  std::vector<C>(static_cast<std::size_t>(n) + 1, zero));
    for (int s = 0; s <= n; ++s) {
        std::vector<C> column;
        for (int p = 0; p <= n; ++p) column.push_back(rows_in_x[static_cast<std::size_t>(p)].coeff_or(s, zero));
        Poly<C> in_u = lagrange_interpolate(nodes, column);
        for (int r = 0; r <= n; ++r) g[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = in_u.coeff_or(r, zero);
    }

    // Characteristic polynomials det(u - Y), det(x - X) via the same nodes.
    auto char_poly_of = [&](const Matrix<C>& m) {
        std::vector<C> values;
        for (int t = 0; t <= n; ++t)
            values.push_back(det_division_free(detail::shift_scalar(nodes[static_cast<std::size_t>(t)], m, one)));
        return lagrange_interpolate(nodes, values);
    };
    Poly<C> pY = char_poly_of(pair.Y);
    Poly<C> pX = char_poly_of(pair.X);

    // Inverse power series at infinity: 1/p(t) = sum_m alpha_m t^{-n-m} with
    // alpha_0 = 1 and alpha_m = -sum_{r=1..min(m,n)} c_r alpha_{m-r}, where
    // c_r is the coefficient of t^{n-r}.
    auto inverse_series = [&](const Poly<C>& p, int terms) {
        if (!(p.coeff_or(n, zero) == one))
            throw InternalConsistencyError("characteristic polynomial is not monic");
        std::vector<C> alpha{one};
        for (int m = 1; m <= terms; ++m) {
            C acc = zero;
            for (int r = 1; r <= std::min(m, n); ++r)
                acc += p.coeff_or(n - r, zero) * alpha[static_cast<std::size_t>(m - r)];
            alpha.push_back(-acc);
        }
        return alpha;
    };
    std::vector<C> alpha = inverse_series(pY, J);
    std::vector<C> beta = inverse_series(pX, I);

    auto coefficient = [&](int i, int j) {
        C acc = zero;
        for (int r = std::max(0, n - j); r <= n; ++r) {
            for (int s = std::max(0, n - i); s <= n; ++s) {
                const C& grs = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
                if (RingTraits<C>::is_zero(grs)) continue;
                acc += grs * alpha[static_cast<std::size_t>(r - n + j)] * beta[static_cast<std::size_t>(s - n + i)];
            }
        }
        return acc;
    };

    // The expansion of a determinant of the form 1 - (small) has constant
    // term 1 and no pure u- or x-tails; violations mean an internal bug.
    if (!(coefficient(0, 0) == one))
        throw InternalConsistencyError("expansion constant term is not 1");
    for (int i = 1; i <= I; ++i)
        if (!RingTraits<C>::is_zero(coefficient(i, 0)))
            throw InternalConsistencyError("expansion has a pure x-tail");
    for (int j = 1; j <= J; ++j)
        if (!RingTraits<C>::is_zero(coefficient(0, j)))
            throw InternalConsistencyError("expansion has a pure u-tail");

    BiSeries<C> out(I, J);
    for (int i = 1; i <= I; ++i)
        for (int j = 1; j <= J; ++j) out.set(i, j, coefficient(i, j));
    return out;
}

}  // namespace bethe
