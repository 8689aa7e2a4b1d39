#include <catch2/catch_amalgamated.hpp>

#include "bethe/verifier.hpp"

using namespace bethe;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

}  // namespace

TEST_CASE("one-dimensional case against the frozen closed form") {
    // For N = 1 everything is scalar: H_a = K_1 + sum_{b != a} 1/(z_a - z_b),
    // and the expansion coefficients are psi_ij = -(sum_a z_a^{j-1}) K_1^{i-1}.
    GaudinConfig cfg{1, 3, {q(2, 3)}, {q(0), q(1), q(1, 2)}};
    auto hs = hamiltonian_set(cfg);
    for (int a = 1; a <= 3; ++a) {
        Rational expect = cfg.K[0];
        for (int b = 1; b <= 3; ++b)
            if (b != a)
                expect += (cfg.z[static_cast<std::size_t>(a - 1)] - cfg.z[static_cast<std::size_t>(b - 1)]).inverse();
        CHECK(hs.H[static_cast<std::size_t>(a - 1)].at(0, 0) == expect);
    }

    auto uop = universal_operator(cfg);
    auto lhs = psi_biseries(uop, 5, 5);
    auto qz = detail::qz_from_hamiltonians(hs);
    auto rhs = phi0_expansion(qz.pair(), 5, 5);
    for (int i = 1; i <= 5; ++i) {
        for (int j = 1; j <= 5; ++j) {
            Rational power_sum(0);
            for (const auto& za : cfg.z) power_sum += pow(za, j - 1);
            Rational expect = -power_sum * pow(cfg.K[0], i - 1);
            CHECK(lhs.at(i, j, OperatorMatrix(1)).at(0, 0) == expect);
            CHECK(rhs.at(i, j, OperatorMatrix(1)).at(0, 0) == expect);
        }
    }

    CHECK(verify_main_identity(cfg, 5, 5).passed);
}

TEST_CASE("verification checks pass on a seeded three-site configuration") {
    SeededRng rng(kDefaultSeed);
    GaudinConfig cfg{2, 3, rng.distinct_rationals(2), rng.distinct_rationals(3)};

    CHECK(verify_main_identity(cfg, 4, 4).passed);
    CHECK(verify_psi_dagger(cfg, 6).passed);
    CHECK(verify_phi_product(cfg).passed);
    CHECK(verify_psi_closed_forms(cfg).passed);
    CHECK(verify_constant_terms(cfg).passed);
    CHECK(verify_commutativity(cfg, 3).passed);
    CHECK(verify_regularized(cfg).passed);
    CHECK(verify_weight_blocks(cfg).passed);
}

TEST_CASE("report structure carries the configuration echo") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    auto rep = verify_main_identity(cfg, 3, 3);
    CHECK(rep.check == "main-identity");
    CHECK(rep.passed);
    REQUIRE_FALSE(rep.params.empty());
    CHECK(rep.params[0] == std::make_pair(std::string("N"), std::string("2")));
    CHECK(rep.elapsed_seconds >= 0.0);
    REQUIRE_FALSE(rep.details.empty());
    CHECK(rep.details[0] == "all 9 operator coefficients equal");
}

TEST_CASE("spectra check in both hypotheses") {
    GaudinConfig distinct{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    CHECK(verify_simple_spectra(distinct, SpectraMode::FullSpace, kDefaultSeed).passed);

    GaudinConfig equal_k{2, 3, {q(1, 2), q(1, 2)}, {q(0), q(1), q(2)}};
    auto rep = verify_simple_spectra(equal_k, SpectraMode::SingularSubspace, kDefaultSeed);
    CHECK(rep.passed);

    // Singular mode demands equal twist parameters.
    CHECK_THROWS_AS(verify_simple_spectra(distinct, SpectraMode::SingularSubspace, kDefaultSeed),
                    Error);

    // Outside the hypotheses the certificate honestly fails and the exact
    // analysis pins the degeneracy.
    GaudinConfig degenerate{2, 2, {q(0), q(0)}, {q(0), q(1)}};
    auto neg = verify_simple_spectra(degenerate, SpectraMode::FullSpace, kDefaultSeed);
    CHECK_FALSE(neg.passed);
    bool conclusive = false;
    for (const auto& d : neg.details)
        if (d.find("conclusively non-simple") != std::string::npos) conclusive = true;
    CHECK(conclusive);
}

TEST_CASE("polynomiality of trace words") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};

    // tr(Z^m) is the power sum, a polynomial of degree m.
    auto repY = verify_polynomiality(cfg, {{'Y', 3}}, 3, kDefaultSeed);
    CHECK(repY.passed);

    // tr(Q(H)^2) is entrywise polynomial with per-variable degree bound 2.
    auto repX = verify_polynomiality(cfg, {{'X', 2}}, 2, kDefaultSeed);
    CHECK(repX.passed);

    // A mixed word at a slightly larger bound.
    auto repXY = verify_polynomiality(cfg, {{'X', 1}, {'Y', 1}}, 3, kDefaultSeed);
    CHECK(repXY.passed);
}

TEST_CASE("reports are deterministic given the seed") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    auto a = verify_simple_spectra(cfg, SpectraMode::FullSpace, 321);
    auto b = verify_simple_spectra(cfg, SpectraMode::FullSpace, 321);
    CHECK(a.passed == b.passed);
    CHECK(a.details == b.details);
    CHECK(a.params == b.params);

    auto w1 = verify_wronskian(99);
    auto w2 = verify_wronskian(99);
    CHECK(w1.details == w2.details);
}

TEST_CASE("wronskian and rank-one sweeps pass") {
    CHECK(verify_wronskian(kDefaultSeed).passed);
    CHECK(verify_rank_one(kDefaultSeed).passed);
}

TEST_CASE("weight blocks with equal twists exercise singular preservation") {
    GaudinConfig cfg{2, 3, {q(-4, 3), q(-4, 3)}, {q(0), q(1), q(3)}};
    auto rep = verify_weight_blocks(cfg);
    CHECK(rep.passed);
    bool mentions_singular = false;
    for (const auto& d : rep.details)
        if (d.find("singular subspace") != std::string::npos) mentions_singular = true;
    CHECK(mentions_singular);
}
