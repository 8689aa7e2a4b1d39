#include <catch2/catch_amalgamated.hpp>

#include "bethe/bethe_algebra.hpp"
#include "bethe/seeded_rng.hpp"

using namespace bethe;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

MatRatFun identity_fun(const GaudinConfig& cfg, const Rational& s = Rational(1)) {
    return MatRatFun::constant(cfg.z, OperatorMatrix::identity(cfg.dim()).scaled(s),
                               OperatorMatrix(cfg.dim()));
}

}  // namespace

TEST_CASE("symmetric polynomial helpers") {
    std::vector<Rational> K{q(1), q(2), q(3)};
    auto e = elementary_symmetric(K);
    CHECK(e[0] == q(1));
    CHECK(e[1] == q(6));
    CHECK(e[2] == q(11));
    CHECK(e[3] == q(6));
    auto h = complete_homogeneous(K, 3);
    CHECK(h[0] == q(1));
    CHECK(h[1] == q(6));
    CHECK(h[2] == q(25));  // sum of monomials of degree 2 in 1,2,3
    CHECK(h[3] == q(90));
    // Newton's identity window: sum_{s+m=i} (-1)^s e_s h_m = 0 for i >= 1.
    for (int i = 1; i <= 3; ++i) {
        Rational acc(0);
        for (int s = 0; s <= i && s <= 3; ++s) {
            Rational term = e[static_cast<std::size_t>(s)] * h[static_cast<std::size_t>(i - s)];
            acc += s % 2 == 0 ? term : -term;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("currents") {
    // N = 1: the current is the scalar sum of simple poles times the identity.
    GaudinConfig one{1, 3, {q(5)}, {q(0), q(1), q(2)}};
    auto c = current(1, 1, one);
    CHECK(c.polynomial_part().is_zero());
    for (int a = 0; a < 3; ++a) CHECK(c.residue(a) == OperatorMatrix::identity(1));

    // One site: e_ij(u) = e_ij / (u - z_1).
    GaudinConfig site{2, 1, {q(0), q(1)}, {q(7)}};
    auto c12 = current(1, 2, site);
    CHECK(c12.pole_terms().size() == 1);
    CHECK(c12.residue(0) == generator_action(1, 2, 1, 2, 1));

    // Residues recover the generator actions.
    GaudinConfig cfg{2, 3, {q(0), q(1)}, {q(0), q(1), q(1, 2)}};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            auto cur = current(i, j, cfg);
            for (int a = 1; a <= 3; ++a)
                CHECK(cur.residue(a - 1) == generator_action(i, j, a, 2, 3));
        }
}

TEST_CASE("noncommutative product obeys the Leibniz rule") {
    GaudinConfig cfg{1, 1, {q(0)}, {q(2)}};
    OperatorMatrix zero(1);
    MatRatFun proto(cfg.z, zero);

    // d * (u - z)^{-1} = (u - z)^{-1} d - (u - z)^{-2}.
    MatRatFun pole(cfg.z, zero);
    pole.add_pole_term(0, 1, OperatorMatrix::identity(1));
    DiffOp d = DiffOp::derivation(proto);
    DiffOp f = DiffOp::multiplication(pole);
    DiffOp prod = d * f;
    CHECK(prod.order() == 1);
    CHECK(prod.coeff(1) == pole);
    CHECK(prod.coeff(0) == pole.derivative());

    // (d - c)^2 = d^2 - 2c d + c^2 for constant scalar c.
    Rational cval(3, 2);
    DiffOp dc = d - DiffOp::multiplication(MatRatFun::constant(
                        cfg.z, OperatorMatrix::identity(1).scaled(cval), zero));
    DiffOp sq = dc * dc;
    CHECK(sq.order() == 2);
    CHECK(sq.coeff(2) == MatRatFun::constant(cfg.z, OperatorMatrix::identity(1), zero));
    CHECK(sq.coeff(1) ==
          MatRatFun::constant(cfg.z, OperatorMatrix::identity(1).scaled(q(-3)), zero));
    CHECK(sq.coeff(0) ==
          MatRatFun::constant(cfg.z, OperatorMatrix::identity(1).scaled(q(9, 4)), zero));
}

TEST_CASE("operator multiplication is associative") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    OperatorMatrix zero(cfg.dim());
    MatRatFun proto(cfg.z, zero);
    SeededRng rng(kDefaultSeed);

    auto seeded_op = [&] {
        MatRatFun c0(cfg.z, zero);
        for (int a = 0; a < 2; ++a) {
            OperatorMatrix m(cfg.dim());
            for (int t = 0; t < 4; ++t)
                m.set(static_cast<int>(rng.next_int(0, 3)), static_cast<int>(rng.next_int(0, 3)),
                      rng.next_rational());
            c0.add_pole_term(a, 1, m);
        }
        return DiffOp::derivation(proto) + DiffOp::multiplication(c0);
    };
    DiffOp A = seeded_op(), B = seeded_op(), C = seeded_op();
    CHECK((A * B) * C == A * (B * C));
}

TEST_CASE("one-dimensional universal operator") {
    GaudinConfig cfg{1, 3, {q(2, 3)}, {q(0), q(1), q(1, 2)}};
    auto uop = universal_operator(cfg);
    CHECK(uop.op.order() == 1);
    MatRatFun expected = identity_fun(cfg, -cfg.K[0]);
    for (int a = 0; a < 3; ++a)
        expected.add_pole_term(a, 1, OperatorMatrix::identity(1).scaled(q(-1)));
    CHECK(uop.B[0] == expected);
}

TEST_CASE("hand-expanded two-by-two row determinant at one site") {
    // Independent oracle: with entries a11 = d - K1 - e11(u),
    // a22 = d - K2 - e22(u), a12 = -e21(u), a21 = -e12(u), the row
    // determinant a11 a22 - a12 a21 expands by the Leibniz rule to
    //   B_1(u) = -(K1 + K2) - (E11 + E22)/(u - z),
    //   B_2(u) = K1 K2 + (K1 E22 + K2 E11)/(u - z)
    //            + (E22 + E11 E22 - E21 E12)/(u - z)^2,
    // where the (u - z)^{-2} term collects the derivative correction from d
    // passing over e22(u).
    GaudinConfig cfg{2, 1, {q(2), q(-1, 2)}, {q(1, 3)}};
    auto uop = universal_operator(cfg);

    auto E = [&](int i, int j) { return generator_action(i, j, 1, 2, 1); };
    OperatorMatrix zero(2);

    MatRatFun b1 = identity_fun(cfg, -(cfg.K[0] + cfg.K[1]));
    b1.add_pole_term(0, 1, -(E(1, 1) + E(2, 2)));
    CHECK(uop.B[0] == b1);

    MatRatFun b2 = identity_fun(cfg, cfg.K[0] * cfg.K[1]);
    b2.add_pole_term(0, 1, E(2, 2).scaled(cfg.K[0]) + E(1, 1).scaled(cfg.K[1]));
    b2.add_pole_term(0, 2, E(2, 2) + E(1, 1) * E(2, 2) - E(2, 1) * E(1, 2));
    CHECK(uop.B[1] == b2);
}

TEST_CASE("constant terms collapse to the twist product") {
    SeededRng rng(kDefaultSeed);
    for (auto [N, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
        GaudinConfig cfg{N, n, rng.distinct_rationals(static_cast<std::size_t>(N)),
                         rng.distinct_rationals(static_cast<std::size_t>(n))};
        auto uop = universal_operator(cfg);
        auto e = elementary_symmetric(cfg.K);
        for (int i = 1; i <= N; ++i) {
            Rational s = e[static_cast<std::size_t>(i)];
            if (i % 2 != 0) s = -s;
            CHECK(uop.B[static_cast<std::size_t>(i - 1)].infinity_coeff(0) ==
                  OperatorMatrix::identity(cfg.dim()).scaled(s));
        }
    }
}

TEST_CASE("first generator series match their closed forms") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    auto uop = universal_operator(cfg);
    auto hs = hamiltonian_set(cfg);
    const OperatorMatrix id = OperatorMatrix::identity(cfg.dim());

    MatRatFun psi1(cfg.z, OperatorMatrix(cfg.dim()));
    for (int a = 0; a < 2; ++a) psi1.add_pole_term(a, 1, id.scaled(q(-1)));
    CHECK(psi_coefficient_function(uop, 1) == psi1);

    MatRatFun psi2(cfg.z, OperatorMatrix(cfg.dim()));
    for (int a = 0; a < 2; ++a) {
        OperatorMatrix coeff = -hs.H[static_cast<std::size_t>(a)];
        coeff += id.scaled((cfg.z[static_cast<std::size_t>(a)] - cfg.z[static_cast<std::size_t>(1 - a)]).inverse());
        psi2.add_pole_term(a, 1, coeff);
    }
    CHECK(psi_coefficient_function(uop, 2) == psi2);
}

TEST_CASE("psi dagger expansion") {
    // x^{-1} coefficient is n times the identity; x^{-2} is sum_i K_i E_ii.
    GaudinConfig cfg{2, 3, {q(2), q(-3)}, {q(0), q(1), q(4)}};
    auto uop = universal_operator(cfg);
    auto dag = psi_dagger(psi_biseries(uop, 3, 1), 3, cfg.dim());
    CHECK(dag[0] == OperatorMatrix::identity(cfg.dim()).scaled(q(3)));
    OperatorMatrix second(cfg.dim());
    for (int i = 1; i <= 2; ++i)
        second += generator_total(i, i, 2, 3).scaled(cfg.K[static_cast<std::size_t>(i - 1)]);
    CHECK(dag[1] == second);

    // Diagonal case N = 2, n = 1, K = (0, 1): the expansion of
    // diag(1/x, 1/(x-1)) has x^{-i} coefficient diag(0^{i-1}, 1).
    GaudinConfig diag_cfg{2, 1, {q(0), q(1)}, {q(5)}};
    auto uop1 = universal_operator(diag_cfg);
    auto dag1 = psi_dagger(psi_biseries(uop1, 4, 1), 4, 2);
    OperatorMatrix e11 = generator_action(1, 1, 1, 2, 1), e22 = generator_action(2, 2, 1, 2, 1);
    CHECK(dag1[0] == e11 + e22);
    for (int i = 2; i <= 4; ++i) CHECK(dag1[static_cast<std::size_t>(i - 1)] == e22);
}

TEST_CASE("generator coefficients commute with the diagonal totals") {
    SeededRng rng(kDefaultSeed);
    GaudinConfig cfg{2, 2, rng.distinct_rationals(2), rng.distinct_rationals(2)};
    auto uop = universal_operator(cfg);
    auto psi = psi_biseries(uop, 3, 3);
    for (int i = 1; i <= 2; ++i) {
        auto total = generator_total(i, i, cfg.N, cfg.n);
        for (int bi = 1; bi <= cfg.N; ++bi)
            for (int j = 0; j <= 3; ++j)
                CHECK(commutator(uop.B[static_cast<std::size_t>(bi - 1)].infinity_coeff(j), total)
                          .is_zero());
        for (const auto& [key, coeff] : psi.coefficients())
            CHECK(commutator(coeff, total).is_zero());
    }
}

TEST_CASE("pole orders of the operator coefficients are bounded by the index") {
    SeededRng rng(kDefaultSeed);
    GaudinConfig cfg{3, 2, rng.distinct_rationals(3), rng.distinct_rationals(2)};
    auto uop = universal_operator(cfg);
    for (int i = 1; i <= cfg.N; ++i)
        CHECK(uop.B[static_cast<std::size_t>(i - 1)].max_pole_order() <= i);
}

TEST_CASE("generator change of basis is invertible over symmetric functions") {
    // Reconstruct B_i(u) from sum_s (-1)^s e_s(K) Psi_{i-s}(u); indices past N
    // must cancel to zero.
    SeededRng rng(777);
    GaudinConfig cfg{2, 2, rng.distinct_rationals(2), rng.distinct_rationals(2)};
    auto uop = universal_operator(cfg);
    auto e = elementary_symmetric(cfg.K);
    const OperatorMatrix zero(cfg.dim());

    auto psi_or_unit = [&](int idx) {
        if (idx == 0) return identity_fun(cfg);
        return psi_coefficient_function(uop, idx);
    };
    for (int i = 1; i <= cfg.N + 2; ++i) {
        MatRatFun acc(cfg.z, zero);
        for (int s = 0; s <= std::min(i, cfg.N); ++s) {
            Rational c = e[static_cast<std::size_t>(s)];
            if (s % 2 != 0) c = -c;
            acc += psi_or_unit(i - s).scaled(c);
        }
        if (i <= cfg.N) {
            CHECK(acc == uop.B[static_cast<std::size_t>(i - 1)]);
        } else {
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("regularized operator at N = 1 by explicit multiplication") {
    GaudinConfig cfg{1, 2, {q(3, 2)}, {q(0), q(2)}};
    auto uop = universal_operator(cfg);
    auto reg = regularized_operator(uop);

    // Expected by direct polynomial arithmetic:
    // coefficient of d^1 is P(u); coefficient of d^0 is
    // -K1 P(u) - sum_a prod_{b != a} (u - z_b).
    Poly<Rational> P = poly_from_roots(cfg.z);
    Poly<Rational> expected0 = P.scaled(-cfg.K[0]);
    for (std::size_t a = 0; a < cfg.z.size(); ++a) {
        std::vector<Rational> others;
        for (std::size_t b = 0; b < cfg.z.size(); ++b)
            if (b != a) others.push_back(cfg.z[b]);
        expected0 -= poly_from_roots(others);
    }
    for (int deg = 0; deg <= 2; ++deg) {
        CHECK(reg.coeff(1, deg) ==
              OperatorMatrix::identity(1).scaled(P.coeff_or(deg, q(0))));
        CHECK(reg.coeff(0, deg) ==
              OperatorMatrix::identity(1).scaled(expected0.coeff_or(deg, q(0))));
    }
}

TEST_CASE("regularized operator boundary identities") {
    SeededRng rng(31);
    GaudinConfig cfg{3, 2, rng.distinct_rationals(3), rng.distinct_rationals(2)};
    auto uop = universal_operator(cfg);
    auto reg = regularized_operator(uop);
    const OperatorMatrix id = OperatorMatrix::identity(cfg.dim());

    Poly<Rational> P = poly_from_roots(cfg.z);
    for (int a = 0; a <= cfg.n; ++a)
        CHECK(reg.coeff(cfg.N, a) == id.scaled(P.coeff_or(a, q(0))));

    Poly<Rational> R = poly_from_roots(cfg.K);
    for (int i = 0; i <= cfg.N; ++i)
        CHECK(reg.coeff(i, cfg.n) == id.scaled(R.coeff_or(i, q(0))));
}
