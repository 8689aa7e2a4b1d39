#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bethe/biseries.hpp"
#include "bethe/gaudin.hpp"
#include "bethe/matrix.hpp"
#include "bethe/rational.hpp"
#include "bethe/tensor_rep.hpp"
#include "bethe/verifier.hpp"

namespace bethe {

// All JSON emitted by the library goes through these helpers. Keys are
// serialized in sorted order and rationals as exact "p/q" strings, so a run
// with the same configuration and seed produces byte-identical output.
using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const Matrix<Rational>& m) {
    Json entries = Json::array();
    for (int r = 0; r < m.dim(); ++r)
        for (const auto& [c, v] : m.row(r)) entries.push_back(Json::array({r, c, v.str()}));
    return Json{{"dim", m.dim()}, {"entries", entries}};
}

inline Json to_json(const BiSeries<Matrix<Rational>>& s) {
    Json coeffs = Json::array();
    for (const auto& [key, m] : s.coefficients())
        coeffs.push_back(Json{{"i", key.first}, {"j", key.second}, {"matrix", to_json(m)}});
    return Json{{"max_i", s.max_i()}, {"max_j", s.max_j()}, {"coefficients", coeffs}};
}

inline Json to_json(const GaudinConfig& cfg) {
    Json K = Json::array();
    for (const auto& k : cfg.K) K.push_back(k.str());
    Json z = Json::array();
    for (const auto& za : cfg.z) z.push_back(za.str());
    return Json{{"N", cfg.N}, {"n", cfg.n}, {"K", K}, {"z", z}};
}

inline Json to_json(const VerificationReport& rep, bool include_timings = false) {
    Json params = Json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    Json j{{"check", rep.check},
           {"params", params},
           {"status", rep.passed ? "pass" : "fail"},
           {"details", rep.details}};
    if (include_timings) j["elapsed_seconds"] = rep.elapsed_seconds;
    return j;
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bethe
