#include "tentcode/algorithms.hpp"
#include "tentcode/automaton.hpp"
#include "tentcode/encoder.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/stats.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

using namespace tentcode;

namespace {

nlohmann::json space_json(const SpaceReport& s) {
    return nlohmann::json{{"max_level", s.max_level},
                          {"table_levels", s.table_levels},
                          {"max_rational_bits", s.max_rational_bits},
                          {"stream_bits_read", s.stream_bits_read}};
}

// Exactly one of --x / --x-bits, parsed lazily so domain checks happen in
// the library and map to exit code 2.
struct XInput {
    std::string rational;
    std::string bits;

    bool is_stream() const { return !bits.empty(); }
    Rational value() const { return Rational::parse(rational); }
    WordDigitStream stream() const { return WordDigitStream(BitCode::parse(bits)); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tent-map codes: encoder, segment automaton, space-bounded algorithms"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string mu, x_str, eps_str, code_str, round_str = "nearest-bin", format = "dot";
    std::string x_bits;
    size_t n = 1, trials = 100;
    unsigned long prec = 16;
    int levels = 1, workers = 0;
    uint64_t seed = 0;

    auto* cmd_encode = app.add_subcommand("encode", "exact n-bit code of a rational point");
    cmd_encode->add_option("--mu", mu)->required();
    cmd_encode->add_option("--x", x_str)->required();
    cmd_encode->add_option("--n", n)->required();
    cmd_encode->callback([&] {
        std::cout << encode(TentParams::parse(mu), Rational::parse(x_str), n).str() << "\n";
    });

    auto* cmd_naive = app.add_subcommand("naive-encode", "rounded-orbit code (possibly invalid)");
    cmd_naive->add_option("--mu", mu)->required();
    cmd_naive->add_option("--x", x_str)->required();
    cmd_naive->add_option("--n", n)->required();
    std::map<std::string, RoundingMode> round_names{{"nearest-bin", RoundingMode::NearestBinary},
                                                    {"floor-bin", RoundingMode::FloorBinary},
                                                    {"floor-dec", RoundingMode::FloorDecimal}};
    cmd_naive->add_option("--round", round_str)
        ->check(CLI::IsMember({"nearest-bin", "floor-bin", "floor-dec"}));
    cmd_naive->add_option("--prec", prec)->required();
    cmd_naive->callback([&] {
        RoundingConfig cfg{round_names.at(round_str), prec};
        std::cout << naive_encode(TentParams::parse(mu), Rational::parse(x_str), n, cfg).str()
                  << "\n";
    });

    auto* cmd_valid = app.add_subcommand("valid-encode", "space-bounded valid code of x within eps");
    cmd_valid->add_option("--mu", mu)->required();
    auto* vx = cmd_valid->add_option("--x", x_str);
    auto* vxb = cmd_valid->add_option("--x-bits", x_bits, "binary digits of x (digit-stream input)");
    vx->excludes(vxb);
    cmd_valid->add_option("--n", n)->required();
    cmd_valid->add_option("--eps", eps_str)->required();
    cmd_valid->callback([&] {
        TentParams p = TentParams::parse(mu);
        EpsilonConfig eps = EpsilonConfig::make(p, Rational::parse(eps_str));
        XInput xin{x_str, x_bits};
        if (x_str.empty() && x_bits.empty())
            throw CLI::RequiredError("--x or --x-bits");
        EncodeResult r;
        if (xin.is_stream()) {
            WordDigitStream s = xin.stream();
            r = valid_encode(p, s, n, eps);
        } else {
            r = valid_encode(p, xin.value(), n, eps);
        }
        std::cout << r.code.str() << "\n" << space_json(r.space).dump() << "\n";
    });

    auto* cmd_decide = app.add_subcommand("decide", "eps-perturbed membership of a code");
    cmd_decide->add_option("--mu", mu)->required();
    cmd_decide->add_option("--code", code_str)->required();
    auto* dx = cmd_decide->add_option("--x", x_str);
    auto* dxb = cmd_decide->add_option("--x-bits", x_bits, "binary digits of x (digit-stream input)");
    dx->excludes(dxb);
    cmd_decide->add_option("--eps", eps_str)->required();
    cmd_decide->callback([&] {
        TentParams p = TentParams::parse(mu);
        EpsilonConfig eps = EpsilonConfig::make(p, Rational::parse(eps_str));
        BitCode code = BitCode::parse(code_str);
        XInput xin{x_str, x_bits};
        if (x_str.empty() && x_bits.empty())
            throw CLI::RequiredError("--x or --x-bits");
        DecideResult r;
        if (xin.is_stream()) {
            WordDigitStream s = xin.stream();
            r = decide(p, code, s, eps);
        } else {
            r = decide(p, code, xin.value(), eps);
        }
        std::cout << (r.accept ? "accept" : "reject") << "\n"
                  << space_json(r.space).dump() << "\n";
        exit_code = r.accept ? 0 : 1;
    });

    auto* cmd_member = app.add_subcommand("member", "language membership of a code");
    cmd_member->add_option("--mu", mu)->required();
    cmd_member->add_option("--code", code_str)->required();
    cmd_member->callback([&] {
        MemberResult r = is_member(TentParams::parse(mu), BitCode::parse(code_str));
        std::cout << (r.valid ? "valid" : "invalid") << "\n";
        exit_code = r.valid ? 0 : 1;
    });

    auto* cmd_auto = app.add_subcommand("automaton", "segment-type transition table");
    cmd_auto->add_option("--mu", mu)->required();
    cmd_auto->add_option("--levels", levels)->required()->check(CLI::PositiveNumber);
    cmd_auto->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
    cmd_auto->callback([&] {
        AutomatonTable t = build_table(TentParams::parse(mu), levels);
        std::cout << (format == "json" ? export_json(t) : export_dot(t));
        if (format == "json") std::cout << "\n";
    });

    auto* cmd_enum = app.add_subcommand("enumerate", "the n-bit language with preimage intervals");
    cmd_enum->add_option("--mu", mu)->required();
    cmd_enum->add_option("--n", n)->required();
    cmd_enum->add_option("--format", format)->check(CLI::IsMember({"csv"}));
    cmd_enum->callback([&] {
        std::cout << "code,lo_num,lo_den,hi_num,hi_den\n";
        for (const auto& cell : enumerate_language(TentParams::parse(mu), n))
            std::cout << cell.code.str() << "," << cell.lo.num() << "," << cell.lo.den() << ","
                      << cell.hi.num() << "," << cell.hi.den() << "\n";
    });

    auto* cmd_trace = app.add_subcommand("trace", "exact orbit of a point");
    cmd_trace->add_option("--mu", mu)->required();
    cmd_trace->add_option("--x", x_str)->required();
    cmd_trace->add_option("--n", n)->required();
    cmd_trace->callback([&] {
        auto orbit = orbit_trace(TentParams::parse(mu), Rational::parse(x_str), n);
        std::cout << "i,x\n";
        for (size_t i = 0; i < orbit.size(); ++i) std::cout << i << "," << orbit[i].str() << "\n";
    });

    auto* cmd_stats = app.add_subcommand("stats", "smoothed K-statistic experiment");
    cmd_stats->add_option("--mu", mu)->required();
    cmd_stats->add_option("--x", x_str)->required();
    cmd_stats->add_option("--eps", eps_str)->required();
    cmd_stats->add_option("--n", n)->required();
    cmd_stats->add_option("--trials", trials)->required();
    cmd_stats->add_option("--seed", seed);
    cmd_stats->add_option("--workers", workers, "worker threads (0 = auto)");
    cmd_stats->callback([&] {
        ExperimentConfig cfg{TentParams::parse(mu), Rational::parse(x_str),
                             Rational::parse(eps_str), n,      trials,
                             seed,                    workers};
        std::vector<int> per_trial;
        KSummary s = smoothed_experiment(cfg, &per_trial);
        std::cout << "trial,K\n";
        for (size_t i = 0; i < per_trial.size(); ++i) std::cout << i << "," << per_trial[i] << "\n";
        nlohmann::json hist = nlohmann::json::object();
        for (const auto& [k, cnt] : s.histogram) hist[std::to_string(k)] = cnt;
        nlohmann::json j{{"trials", s.trials},     {"n", s.n},
                         {"mean_k", s.mean_k()},   {"mean_k_sq", s.mean_k_sq()},
                         {"max_k", s.max_k},       {"sum_k", s.sum_k},
                         {"sum_k_sq", s.sum_k_sq}, {"histogram", hist}};
        std::cout << j.dump() << "\n";
    });

    auto* cmd_verify = app.add_subcommand("verify", "level-structure and length-bound checks");
    cmd_verify->add_option("--mu", mu)->required();
    cmd_verify->add_option("--n", n)->required();
    cmd_verify->callback([&] {
        LevelBoundsReport r = verify_level_bounds(TentParams::parse(mu), n);
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "n: " << r.n << "\n";
        std::cout << "level_bound: " << r.level_bound << "\n";
        std::cout << "checked_levels: " << r.checked_levels << "\n";
        std::cout << "witness_level: ";
        if (r.witness_level)
            std::cout << *r.witness_level << "\n";
        else
            std::cout << "none\n";
        std::cout << "witness_within_bound: " << yn(r.witness_within_bound) << "\n";
        std::cout << "min_length_ok: " << yn(r.min_length_ok) << "\n";
        std::cout << "edge_structure_ok: " << yn(r.edge_structure_ok) << "\n";
        std::cout << "back_windows_ok: " << yn(r.back_windows_ok) << "\n";
        std::cout << "in_edge_form_ok: " << yn(r.in_edge_form_ok) << "\n";
        std::cout << "hypotheses_ok: " << yn(r.hypotheses_ok) << "\n";
        std::cout << "closure_level: ";
        if (r.closure_level)
            std::cout << *r.closure_level << "\n";
        else
            std::cout << "none\n";
        if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
        exit_code = r.all_ok() ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help exits clean; every parse error is a usage error
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
