#include <catch2/catch_amalgamated.hpp>

#include "bethe/json_io.hpp"

using namespace bethe;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

}  // namespace

TEST_CASE("rationals serialize as exact strings") {
    CHECK(to_json(q(3, 4)) == Json("3/4"));
    CHECK(to_json(q(-5)) == Json("-5"));
    CHECK(to_json(q(0)) == Json("0"));
}

TEST_CASE("matrices serialize sparsely in row-major order") {
    Matrix<Rational> m(3);
    m.set(2, 0, q(1, 2));
    m.set(0, 1, q(-2));
    m.set(0, 0, q(7));
    Json j = to_json(m);
    CHECK(j["dim"] == 3);
    REQUIRE(j["entries"].size() == 3);
    CHECK(j["entries"][0] == Json::array({0, 0, "7"}));
    CHECK(j["entries"][1] == Json::array({0, 1, "-2"}));
    CHECK(j["entries"][2] == Json::array({2, 0, "1/2"}));
}

TEST_CASE("series serialize with their window") {
    BiSeries<Matrix<Rational>> s(2, 2);
    Matrix<Rational> m(1);
    m.set(0, 0, q(5));
    s.set(1, 2, m);
    Json j = to_json(s);
    CHECK(j["max_i"] == 2);
    CHECK(j["max_j"] == 2);
    REQUIRE(j["coefficients"].size() == 1);
    CHECK(j["coefficients"][0]["i"] == 1);
    CHECK(j["coefficients"][0]["j"] == 2);
    CHECK(j["coefficients"][0]["matrix"]["dim"] == 1);
}

TEST_CASE("reports omit timings unless asked") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    auto rep = verify_constant_terms(cfg);
    Json plain = to_json(rep);
    CHECK_FALSE(plain.contains("elapsed_seconds"));
    CHECK(plain["status"] == "pass");
    CHECK(plain["check"] == "constant-terms");
    CHECK(plain["params"]["N"] == "2");
    Json with_time = to_json(rep, true);
    CHECK(with_time.contains("elapsed_seconds"));
}

TEST_CASE("identical configurations produce byte-identical canonical output") {
    GaudinConfig cfg{2, 2, {q(0), q(1)}, {q(0), q(1)}};
    auto run = [&] {
        Json out{{"config", to_json(cfg)},
                 {"checks", Json::array({to_json(verify_constant_terms(cfg)),
                                         to_json(verify_simple_spectra(
                                             cfg, SpectraMode::FullSpace, 7777))})}};
        return dump_canonical(out);
    };
    CHECK(run() == run());
}

TEST_CASE("config round trip") {
    GaudinConfig cfg{2, 3, {q(1, 3), q(-2)}, {q(0), q(1), q(5, 2)}};
    Json j = to_json(cfg);
    CHECK(j["N"] == 2);
    CHECK(j["n"] == 3);
    CHECK(j["K"] == Json::array({"1/3", "-2"}));
    CHECK(j["z"] == Json::array({"0", "1", "5/2"}));
}
