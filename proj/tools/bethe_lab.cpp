#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bethe/bethe_algebra.hpp"
#include "bethe/calogero_moser.hpp"
#include "bethe/gaudin.hpp"
#include "bethe/json_io.hpp"
#include "bethe/seeded_rng.hpp"
#include "bethe/verifier.hpp"

namespace {

using namespace bethe;

// Invalid input (exit code 2), as opposed to a verification failure (exit 1).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& flag, const std::string& text) {
    std::vector<Rational> out;
    for (const auto& piece : split(text, ',')) {
        try {
            out.push_back(Rational::from_string(piece));
        } catch (const Error&) {
            throw UsageError("malformed rational in " + flag + ": '" + piece + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list for " + flag);
    return out;
}

std::pair<int, int> parse_orders(const std::string& text) {
    auto parts = split(text, ',');
    try {
        if (parts.size() == 1) {
            int v = std::stoi(parts[0]);
            return {v, v};
        }
        if (parts.size() == 2) return {std::stoi(parts[0]), std::stoi(parts[1])};
    } catch (const std::exception&) {
    }
    throw UsageError("malformed value for --orders: '" + text + "'");
}

std::vector<WordFactor> parse_word(const std::string& text) {
    std::vector<WordFactor> word;
    std::size_t i = 0;
    while (i < text.size()) {
        char letter = text[i];
        if (letter != 'X' && letter != 'Y')
            throw UsageError("malformed trace word (letters must be X or Y): '" + text + "'");
        ++i;
        int exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw UsageError("malformed trace word exponent: '" + text + "'");
            exponent = std::stoi(text.substr(start, i - start));
        }
        word.push_back(WordFactor{letter, exponent});
    }
    if (word.empty()) throw UsageError("empty trace word");
    return word;
}

std::uint64_t env_default_seed() {
    if (const char* env = std::getenv("BETHE_LAB_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw UsageError("malformed BETHE_LAB_SEED value");
        return static_cast<std::uint64_t>(v);
    }
    return kDefaultSeed;
}

// Common option bundle; a JSON config file supplies defaults and explicit
// flags override it, so scripted sweeps can pin everything in one file.
struct Options {
    std::optional<int> N, n;
    std::optional<std::string> K, z, h;
    std::optional<std::string> orders;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> checks;
    std::optional<std::string> spectra_mode;
    std::optional<std::string> word;
    std::optional<int> degree_bound;
    std::optional<int> window;
    std::optional<int> budget;
    std::string format = "json";
    std::string config_path;
    bool timings = false;
};

void merge_config_file(Options& opt, CLI::App* sub) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw UsageError("cannot open config file: " + opt.config_path);
    Json file;
    try {
        in >> file;
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed config file: ") + e.what());
    }
    auto unset = [&](const char* flag) {
        CLI::Option* o = sub->get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    auto as_list_string = [](const Json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        std::string s;
        for (const auto& item : v) {
            if (!s.empty()) s += ",";
            s += item.is_string() ? item.get<std::string>() : item.dump();
        }
        return s;
    };
    if (file.contains("N") && unset("--N")) opt.N = file["N"].get<int>();
    if (file.contains("n") && unset("--n")) opt.n = file["n"].get<int>();
    if (file.contains("K") && unset("--K")) opt.K = as_list_string(file["K"]);
    if (file.contains("z") && unset("--z")) opt.z = as_list_string(file["z"]);
    if (file.contains("h") && unset("--hvals")) opt.h = as_list_string(file["h"]);
    if (file.contains("orders") && unset("--orders")) opt.orders = as_list_string(file["orders"]);
    if (file.contains("seed") && unset("--seed")) opt.seed = file["seed"].get<std::uint64_t>();
    if (file.contains("checks") && unset("--checks")) opt.checks = as_list_string(file["checks"]);
    if (file.contains("spectra_mode") && unset("--spectra-mode"))
        opt.spectra_mode = file["spectra_mode"].get<std::string>();
    if (file.contains("word") && unset("--word")) opt.word = file["word"].get<std::string>();
    if (file.contains("degree_bound") && unset("--degree-bound"))
        opt.degree_bound = file["degree_bound"].get<int>();
    if (file.contains("window") && unset("--window")) opt.window = file["window"].get<int>();
    if (file.contains("budget") && unset("--budget")) opt.budget = file["budget"].get<int>();
}

GaudinConfig config_from(const Options& opt) {
    if (!opt.N || !opt.n) throw UsageError("--N and --n are required");
    if (!opt.K) throw UsageError("--K is required");
    if (!opt.z) throw UsageError("--z is required");
    GaudinConfig cfg{*opt.N, *opt.n, parse_rational_list("--K", *opt.K),
                     parse_rational_list("--z", *opt.z)};
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void emit(const Json& j, const Options& opt) {
    if (opt.format == "json") std::cout << dump_canonical(j);
}

void print_report_text(const VerificationReport& rep, const Options& opt) {
    std::cout << (rep.passed ? "PASS " : "FAIL ") << rep.check;
    for (const auto& [k, v] : rep.params) std::cout << " " << k << "=" << v;
    if (opt.timings) std::cout << " [" << rep.elapsed_seconds << "s]";
    std::cout << "\n";
    for (const auto& d : rep.details) std::cout << "    " << d << "\n";
}

int run_hamiltonian(const Options& opt) {
    GaudinConfig cfg = config_from(opt);
    auto hs = hamiltonian_set(cfg);
    Json out{{"command", "hamiltonian"}, {"config", to_json(cfg)}};
    Json list = Json::array();
    for (const auto& h : hs.H) list.push_back(to_json(h));
    out["hamiltonians"] = list;
    emit(out, opt);
    if (opt.format == "text") {
        std::cout << "built " << hs.H.size() << " commuting Hamiltonians on dimension "
                  << cfg.dim() << "\n";
    }
    return 0;
}

// Default truncation window: 6, stretched when N is large enough that the
// change of generators needs more coefficients.
std::string default_orders(const GaudinConfig& cfg) {
    int w = std::max(6, cfg.N + 2);
    return std::to_string(w) + "," + std::to_string(w);
}

int run_bethe(const Options& opt) {
    GaudinConfig cfg = config_from(opt);
    auto [I, J] = parse_orders(opt.orders.value_or(default_orders(cfg)));
    if (I < 1 || J < 1) throw UsageError("--orders must be positive");
    auto uop = universal_operator(cfg);
    auto psi = psi_biseries(uop, I, J);

    Json b_table = Json::array();
    for (int i = 1; i <= cfg.N; ++i) {
        for (int j = 0; j <= J; ++j) {
            OperatorMatrix coeff = uop.B[static_cast<std::size_t>(i - 1)].infinity_coeff(j);
            if (!coeff.is_zero())
                b_table.push_back(Json{{"i", i}, {"j", j}, {"matrix", to_json(coeff)}});
        }
    }
    Json out{{"command", "bethe"},
             {"config", to_json(cfg)},
             {"orders", Json{{"I", I}, {"J", J}}},
             {"B", b_table},
             {"Psi", to_json(psi)}};
    emit(out, opt);
    if (opt.format == "text")
        std::cout << "emitted B_ij (i<=" << cfg.N << ", j<=" << J << ") and Psi_ij (window " << I
                  << "x" << J << ")\n";
    return 0;
}

int run_cm(const Options& opt) {
    if (!opt.z) throw UsageError("--z is required");
    auto z = parse_rational_list("--z", *opt.z);
    std::uint64_t seed = opt.seed ? *opt.seed : env_default_seed();
    SeededRng rng(seed);
    std::vector<Rational> h;
    if (opt.h) {
        h = parse_rational_list("--hvals", *opt.h);
        if (h.size() != z.size()) throw UsageError("--hvals must match --z in length");
    } else {
        for (std::size_t a = 0; a < z.size(); ++a) h.push_back(rng.next_rational());
    }
    QZData<Rational> qz = [&] {
        try {
            return build_qz<Rational>(z, h);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }();
    auto [I, J] = parse_orders(opt.orders.value_or("4,4"));
    if (I < 1 || J < 1) throw UsageError("--orders must be positive");

    bool rank_one = rank_one_check(qz.Q, qz.Z);

    // Wronskian cross-check at seeded sample points, exponentials cancelled.
    auto mu = mu_from_h(z, h);
    Rational delta = vandermonde_delta(z);
    bool wronskian_ok = true;
    const int n = static_cast<int>(z.size());
    for (int t = 0; t < 3; ++t) {
        Rational u = rng.next_rational();
        Rational x = rng.next_rational();
        Matrix<Rational> uz = detail::shift_scalar(u, qz.Z, Rational(1));
        Matrix<Rational> xq = detail::shift_scalar(x, qz.Q, Rational(1));
        Rational rhs = delta * det_division_free(uz * xq - Matrix<Rational>::identity(n));
        if (wronskian_bivariate(z, mu, u, x) != rhs) wronskian_ok = false;
        if (wronskian_w0(z, mu, x) != delta * phi_function(x, qz)) wronskian_ok = false;
    }

    auto series = phi0_expansion(qz.pair(), I, J);
    Json phi0 = Json::array();
    for (const auto& [key, value] : series.coefficients())
        phi0.push_back(Json::array({key.first, key.second, value.str()}));

    Json hj = Json::array(), zj = Json::array();
    for (const auto& v : h) hj.push_back(v.str());
    for (const auto& v : z) zj.push_back(v.str());
    Json out{{"command", "cm"},
             {"seed", std::to_string(seed)},
             {"z", zj},
             {"h", hj},
             {"Q", to_json(qz.Q)},
             {"Z", to_json(qz.Z)},
             {"rank_one", rank_one},
             {"wronskian_identity", wronskian_ok},
             {"phi0", phi0}};
    emit(out, opt);
    if (opt.format == "text")
        std::cout << "rank_one=" << (rank_one ? "true" : "false")
                  << " wronskian=" << (wronskian_ok ? "true" : "false") << " phi0 window " << I
                  << "x" << J << "\n";
    return rank_one && wronskian_ok ? 0 : 1;
}

const std::vector<std::string> kAllChecks = {
    "main-identity", "psi-dagger",  "phi-product",   "psi-closed-forms",
    "constant-terms", "commutativity", "regularized", "wronskian",
    "rank-one",      "spectra",     "polynomiality", "weight-blocks"};

int run_verify(const Options& opt) {
    GaudinConfig cfg = config_from(opt);
    auto [I, J] = parse_orders(opt.orders.value_or(default_orders(cfg)));
    if (I < 1 || J < 1) throw UsageError("--orders must be positive");
    std::uint64_t seed = opt.seed ? *opt.seed : env_default_seed();
    int window = opt.window.value_or(4);
    int budget = opt.budget.value_or(8);

    std::vector<std::string> selected = kAllChecks;
    if (opt.checks) {
        selected = split(*opt.checks, ',');
        for (const auto& c : selected)
            if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
                throw UsageError("unknown check for --checks: '" + c + "'");
    }

    SpectraMode mode = SpectraMode::FullSpace;
    std::string mode_str = opt.spectra_mode.value_or("auto");
    if (mode_str == "auto") {
        mode = cfg.all_K_equal() && cfg.N > 1 ? SpectraMode::SingularSubspace : SpectraMode::FullSpace;
    } else if (mode_str == "full") {
        mode = SpectraMode::FullSpace;
    } else if (mode_str == "singular") {
        mode = SpectraMode::SingularSubspace;
    } else {
        throw UsageError("unknown value for --spectra-mode: '" + mode_str + "'");
    }

    auto word = parse_word(opt.word.value_or("X^2"));
    int word_x_degree = 0;
    for (const auto& f : word)
        if (f.letter == 'X') word_x_degree += f.exponent;
    int degree_bound = opt.degree_bound.value_or(word_x_degree + 1);

    // Checks are pure; they run concurrently and are reported in declaration
    // order, so output is deterministic.
    std::vector<std::pair<std::string, std::future<VerificationReport>>> futures;
    auto launch = [&](const std::string& name, std::function<VerificationReport()> fn) {
        futures.emplace_back(name, std::async(std::launch::async, std::move(fn)));
    };
    for (const auto& name : selected) {
        if (name == "main-identity") launch(name, [=] { return verify_main_identity(cfg, I, J); });
        if (name == "psi-dagger") launch(name, [=] { return verify_psi_dagger(cfg, I); });
        if (name == "phi-product") launch(name, [=] { return verify_phi_product(cfg); });
        if (name == "psi-closed-forms") launch(name, [=] { return verify_psi_closed_forms(cfg); });
        if (name == "constant-terms") launch(name, [=] { return verify_constant_terms(cfg); });
        if (name == "commutativity") launch(name, [=] { return verify_commutativity(cfg, window); });
        if (name == "regularized") launch(name, [=] { return verify_regularized(cfg); });
        if (name == "wronskian") launch(name, [=] { return verify_wronskian(seed); });
        if (name == "rank-one") launch(name, [=] { return verify_rank_one(seed); });
        if (name == "spectra")
            launch(name, [=] { return verify_simple_spectra(cfg, mode, seed, budget); });
        if (name == "polynomiality")
            launch(name, [=] { return verify_polynomiality(cfg, word, degree_bound, seed); });
        if (name == "weight-blocks") launch(name, [=] { return verify_weight_blocks(cfg); });
    }

    bool all_passed = true;
    Json checks = Json::array();
    for (auto& [name, fut] : futures) {
        VerificationReport rep = fut.get();
        all_passed = all_passed && rep.passed;
        checks.push_back(to_json(rep, opt.timings));
        if (opt.format == "text") print_report_text(rep, opt);
    }
    Json out{{"command", "verify"},
             {"config", to_json(cfg)},
             {"orders", Json{{"I", I}, {"J", J}}},
             {"seed", std::to_string(seed)},
             {"checks", checks},
             {"all_passed", all_passed}};
    emit(out, opt);
    return all_passed ? 0 : 1;
}

int run_example(const Options& opt) {
    Options local = opt;
    if (!local.N) local.N = 2;
    if (!local.n) local.n = 2;
    if (!local.K) local.K = "0,1";
    if (!local.z) local.z = "0,1";
    GaudinConfig cfg = config_from(local);
    if (cfg.N != 2 || cfg.n != 2) throw UsageError("the example runs at N = n = 2");
    std::uint64_t seed = opt.seed ? *opt.seed : env_default_seed();

    auto hs = hamiltonian_set(cfg);
    auto qz = detail::qz_from_hamiltonians(hs);
    auto pair = qz.pair();

    // tr(Q^2) against its closed form in the Hamiltonians.
    OperatorMatrix lhs = trace_word({{'X', 2}}, pair);
    Rational d = cfg.z[0] - cfg.z[1];
    OperatorMatrix rhs = hs.H[0] * hs.H[0] + hs.H[1] * hs.H[1] -
                         OperatorMatrix::identity(cfg.dim()).scaled(Rational(2) * (d * d).inverse());
    bool trace_ok = lhs == rhs;

    auto main_rep = verify_main_identity(cfg, 6, 6);
    auto phi_rep = verify_phi_product(cfg);
    auto poly_rep = verify_polynomiality(cfg, {{'X', 2}}, 2, seed);

    bool all_passed = trace_ok && main_rep.passed && phi_rep.passed && poly_rep.passed;
    Json out{{"command", "example"},
             {"config", to_json(cfg)},
             {"seed", std::to_string(seed)},
             {"hamiltonians", Json::array({to_json(hs.H[0]), to_json(hs.H[1])})},
             {"trace_word_identity",
              Json{{"word", "X^2"},
                   {"lhs", to_json(lhs)},
                   {"status", trace_ok ? "pass" : "fail"}}},
             {"checks", Json::array({to_json(main_rep, opt.timings), to_json(phi_rep, opt.timings),
                                     to_json(poly_rep, opt.timings)})},
             {"all_passed", all_passed}};
    emit(out, opt);
    if (opt.format == "text") {
        std::cout << "trace-word identity: " << (trace_ok ? "pass" : "fail") << "\n";
        print_report_text(main_rep, opt);
        print_report_text(phi_rep, opt);
        print_report_text(poly_rep, opt);
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact construction and machine verification of the Gaudin model's Bethe algebra"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--format", opt.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--config", opt.config_path, "JSON config file; explicit flags override it");
    app.add_flag("--timings", opt.timings, "include wall-clock timings in reports");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--N", opt.N, "Lie algebra rank parameter");
        sub->add_option("--n", opt.n, "number of tensor factors");
        sub->add_option("--K", opt.K, "comma-separated rationals K_1..K_N");
        sub->add_option("--z", opt.z, "comma-separated distinct rationals z_1..z_n");
        sub->add_option("--seed", opt.seed, "64-bit seed (default: BETHE_LAB_SEED or built-in)");
        sub->add_option("--orders", opt.orders, "series window I,J");
    };

    CLI::App* ham = app.add_subcommand("hamiltonian", "emit the Gaudin Hamiltonians as JSON");
    add_common(ham);
    CLI::App* bet = app.add_subcommand("bethe", "emit the generator tables B_ij and Psi_ij");
    add_common(bet);
    CLI::App* cm = app.add_subcommand("cm", "build (Q, Z); rank-one and Wronskian checks; phi0 table");
    add_common(cm);
    cm->add_option("--hvals", opt.h, "comma-separated rationals h_1..h_n (default: seeded)");
    CLI::App* ver = app.add_subcommand("verify", "run verification checks");
    add_common(ver);
    ver->add_option("--checks", opt.checks, "comma-separated subset of checks");
    ver->add_option("--spectra-mode", opt.spectra_mode, "auto, full, or singular");
    ver->add_option("--word", opt.word, "trace word for the polynomiality check, e.g. X^2");
    ver->add_option("--degree-bound", opt.degree_bound, "per-variable degree bound");
    ver->add_option("--window", opt.window, "commutativity window");
    ver->add_option("--budget", opt.budget, "spectrum certificate attempts");
    CLI::App* ex = app.add_subcommand("example", "run the N = n = 2 walkthrough end to end");
    add_common(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        merge_config_file(opt, sub);
        if (sub == ham) return run_hamiltonian(opt);
        if (sub == bet) return run_bethe(opt);
        if (sub == cm) return run_cm(opt);
        if (sub == ver) return run_verify(opt);
        if (sub == ex) return run_example(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
