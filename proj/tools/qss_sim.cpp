// qss-sim: batch runner, config checker and oracle tables.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qss/harness.hpp"
#include "qss/oracle.hpp"
#include "qss/pauli.hpp"
#include "qss/protocol/engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

std::string flag_for(const std::string& key) {
    std::string flag = "--" + key;
    for (auto& c : flag) {
        if (c == '_') c = '-';
    }
    return flag;
}

void print_bell_pauli(std::ostream& out) {
    out << "# Pauli on one photon of a Bell pair (first photon = 0)\n";
    out << std::left << std::setw(11) << "start" << std::setw(7) << "pauli" << std::setw(8) << "photon" << "result\n";
    for (auto start : qss::kAllBellLabels) {
        for (auto p : qss::kAllPaulis) {
            for (int photon = 0; photon < 2; ++photon) {
                out << std::left << std::setw(11) << qss::to_string(start) << std::setw(7) << qss::to_string(p)
                    << std::setw(8) << photon << qss::to_string(qss::oracle::pauli_on_pair(start, p, photon)) << '\n';
            }
        }
    }
    out << "\n# Bell outcome decoded as the Pauli that maps psi- to it\n";
    for (auto label : qss::kAllBellLabels) {
        out << std::left << std::setw(11) << qss::to_string(label) << qss::to_string(qss::decode_bell_to_pauli(label))
            << '\n';
    }
}

void print_swap(std::ostream& out) {
    out << "# Swap: pairs (1,2) in `left`, (3,4) in `right`; Bell-measure (2,3)\n";
    out << std::left << std::setw(11) << "left" << std::setw(11) << "right" << std::setw(11) << "measured"
        << std::setw(8) << "prob" << "result(1,4)\n";
    for (const auto& row : qss::oracle::swap_table()) {
        out << std::left << std::setw(11) << qss::to_string(row.left) << std::setw(11) << qss::to_string(row.right)
            << std::setw(11) << qss::to_string(row.measured) << std::setw(8) << std::fixed << std::setprecision(4)
            << row.probability << qss::to_string(row.result) << '\n';
    }
}

void print_decoy(std::ostream& out) {
    out << std::fixed << std::setprecision(4);
    out << "# Four-state checking photons vs. intercept-resend (rows: P(Eve measures Z))\n";
    out << std::left << std::setw(8) << "P(Z)";
    for (auto s : qss::kAllSingleStates) out << std::setw(8) << qss::to_string(s);
    out << std::setw(9) << "uniform" << "info_bits\n";
    for (double pz : {1.0, 0.0, 0.5}) {
        out << std::left << std::setw(8) << pz;
        for (auto s : qss::kAllSingleStates) out << std::setw(8) << qss::oracle::decoy_error(s, pz);
        out << std::setw(9) << qss::oracle::decoy_error(pz) << qss::oracle::intercept_resend_information(pz) << '\n';
    }
}

void print_intercept(std::ostream& out) {
    out << std::fixed << std::setprecision(4);
    out << "# Z/X correlation check on psi- after intercept-resend of one photon\n";
    out << std::left << std::setw(8) << "P(Z)" << "check_error\n";
    for (double pz : {1.0, 0.0, 0.5}) {
        out << std::left << std::setw(8) << pz << qss::oracle::intercept_resend_check_error(pz) << '\n';
    }
}

void print_step6(std::ostream& out) {
    const double p = qss::oracle::substituted_decoy_pass_rate();
    out << std::fixed << std::setprecision(6);
    out << "# H-decoy verified on a substituted pair\n";
    out << "pass_rate_per_decoy " << p << '\n';
    for (int d : {1, 2, 4, 8}) {
        out << "detect_with_" << d << "_decoys " << 1.0 - std::pow(p, d) << '\n';
    }
    out << "\n# Collaborative decode with one term replaced by a random Pauli\n";
    out << "mismatch_rate " << qss::oracle::xor_replacement_mismatch_rate() << '\n';
}

const std::map<std::string, std::string>& key_help() {
    static const std::map<std::string, std::string> help = {
        {"protocol", "original|improved"},
        {"n_pairs", "EPR pairs per trial"},
        {"agent_count", "agents (improved; original is always 2)"},
        {"sample_fraction", "fraction of free positions each check draws"},
        {"h_decoy_count", "fixed H-decoy count per agent (improved)"},
        {"decoy_photon_count", "checking photons mixed into each final sequence"},
        {"error_threshold", "abort when a check's error rate exceeds this"},
        {"adversary", "none|eve_intercept_resend|bob_swap_attack"},
        {"hop", "Eve's hop, e.g. S_A:agent0->dealer"},
        {"eve_basis", "fixed-Z|fixed-X|uniform-random"},
        {"falsify_collaboration", "true|false"},
        {"trials", "number of trials"},
        {"seed_base", "trial t uses seed seed_base + t"},
        {"out", "output path (default stdout)"},
        {"format", "jsonl|table"},
        {"threads", "worker threads"},
    };
    return help;
}

int run_command(const qss::Settings& file, const std::map<std::string, std::string>& overrides) {
    qss::Settings merged = file;
    for (const auto& [k, v] : overrides) merged[k] = v;
    const qss::BatchSpec spec = qss::batch_spec_from(merged);
    const qss::BatchResult result = qss::run_batch(spec);
    qss::write_report(result);
    std::cerr << "qss-sim: " << spec.trials << " trials in " << std::fixed << std::setprecision(3)
              << result.stats.wall_seconds << " s\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seedable simulator of multiparty quantum secret splitting"};
    app.set_version_flag("--version", std::string(qss::kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> overrides;

    auto* run = app.add_subcommand("run", "Execute a batch of trials");
    run->add_option("--config", config_path, "Config file (key = value)")->required();
    for (const auto& key : qss::setting_keys()) {
        run->add_option_function<std::string>(
            flag_for(key), [&overrides, key](const std::string& v) { overrides[key] = v; }, key_help().at(key));
    }

    auto* validate = app.add_subcommand("validate", "Check config feasibility");
    validate->add_option("--config", config_path, "Config file (key = value)")->required();

    std::string table = "all";
    auto* oracle = app.add_subcommand("oracle", "Print brute-force reference tables");
    oracle->add_option("--table", table, "Which table")
        ->check(CLI::IsMember({"bell-pauli", "swap", "decoy", "intercept", "step6", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*oracle) {
            if (table == "bell-pauli" || table == "all") print_bell_pauli(std::cout);
            if (table == "all") std::cout << '\n';
            if (table == "swap" || table == "all") print_swap(std::cout);
            if (table == "all") std::cout << '\n';
            if (table == "decoy" || table == "all") print_decoy(std::cout);
            if (table == "all") std::cout << '\n';
            if (table == "intercept" || table == "all") print_intercept(std::cout);
            if (table == "all") std::cout << '\n';
            if (table == "step6" || table == "all") print_step6(std::cout);
            return kExitOk;
        }
        const qss::Settings file = qss::read_settings_file(config_path);
        if (*validate) {
            const qss::BatchSpec spec = qss::batch_spec_from(file);
            qss::validate(spec.scenario);
            const auto plan = qss::plan_sampling(spec.scenario);
            std::cout << "ok: " << qss::to_string(spec.scenario.protocol) << ", " << plan.message_positions
                      << " message positions, hops:";
            for (const auto& hop : qss::hops_for(spec.scenario)) std::cout << ' ' << hop.str();
            std::cout << '\n';
            return kExitOk;
        }
        return run_command(file, overrides);
    } catch (const qss::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const qss::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
