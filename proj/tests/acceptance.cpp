// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include "qss/harness.hpp"
#include "qss/oracle.hpp"
#include "qss/pauli.hpp"
#include "qss/protocol/engine.hpp"
#include "qss/quantum_register.hpp"

using namespace qss;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void info(const std::string& text) { std::printf("       %s\n", text.c_str()); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BatchSpec spec_for(ScenarioConfig c, std::size_t trials) {
    BatchSpec s;
    s.scenario = std::move(c);
    s.trials = trials;
    s.seed_base = 1;
    return s;
}

std::string jsonl(const BatchResult& r) {
    std::ostringstream out;
    emit_report(r, OutputFormat::JsonLines, out);
    return out.str();
}

void honest_original() {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = 64;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t positions = 0;
    std::size_t correct = 0;
    std::size_t detected = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        c.master_seed = seed;
        const auto r = run_original(c);
        detected += r.detected;
        const auto it = r.recovered.find("agent1");
        for (std::size_t i = 0; i < r.dealer_message.size(); ++i) {
            ++positions;
            correct += it != r.recovered.end() && it->second.at(i) == r.dealer_message[i];
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = detected == 0 && positions > 0 && correct == positions && elapsed < 5.0;
    verdict(1, ok, "honest original protocol",
            fmt("detection=%.3f, recovered %zu/%zu positions, %.2f s (limit 5 s)", detected / 100.0, correct,
                positions, elapsed));
}

void attack_on_original() {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = 64;
    c.adversary.kind = AdversaryKind::BobSwapAttack;
    const auto r = run_batch(spec_for(c, 100));
    const bool ok = r.stats.detection_frequency == 0.0 && r.stats.eavesdropper_exact_frequency == 1.0;
    verdict(2, ok, "swap attack succeeds on the original protocol",
            fmt("detection=%.3f (need 0), eavesdropper exact=%.3f (need 1)", r.stats.detection_frequency,
                r.stats.eavesdropper_exact_frequency));
}

void decode_conditional_on_cover() {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = 2048;
    c.sample_fraction = 0.1;
    c.master_seed = 3;
    c.adversary.kind = AdversaryKind::BobSwapAttack;
    const auto truthful = run_original(c);
    const bool exact = truthful.recovered.at("agent1") == truthful.dealer_message;

    c.adversary.falsify_collaboration = true;
    const auto lied = run_original(c);
    const auto& got = lied.recovered.at("agent1");
    std::size_t differ = 0;
    for (std::size_t i = 0; i < got.size(); ++i) differ += got[i] != lied.dealer_message[i];
    const double rate = static_cast<double>(differ) / static_cast<double>(got.size());
    const double expected = oracle::xor_replacement_mismatch_rate();
    const bool ok = exact && differ > 0 && got.size() >= 1000 && std::abs(rate - expected) <= 0.05;
    verdict(3, ok, "third party decodes only with the true cover Paulis",
            fmt("true covers exact=%s; false covers differ on %zu/%zu = %.4f (oracle %.4f +/- 0.05)",
                exact ? "yes" : "no", differ, got.size(), rate, expected));
}

void honest_improved() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t runs = 0;
    std::size_t detected = 0;
    std::size_t inexact = 0;
    std::size_t xor_mismatch = 0;
    std::size_t positions = 0;
    for (std::size_t m = 2; m <= 5; ++m) {
        ScenarioConfig c;
        c.protocol = ProtocolKind::Improved;
        c.n_pairs = 128;
        c.agent_count = m;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            c.master_seed = seed;
            const auto r = run_improved(c);
            ++runs;
            detected += r.detected;
            const auto it = r.recovered.find(agent_name(m - 1));
            inexact += it == r.recovered.end() || it->second != r.dealer_message;
            const auto ops = encode_message(r.dealer_message);
            for (std::size_t i = 0; i < ops.size(); ++i) {
                Pauli total = ops[i];
                for (const auto& row : r.agent_paulis) total = compose(total, row.at(i));
                ++positions;
                xor_mismatch += !(r.readout.at(i) == total);
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = detected == 0 && inexact == 0 && xor_mismatch == 0 && positions > 0 && elapsed < 30.0;
    verdict(4, ok, "honest improved protocol, 2 to 5 agents",
            fmt("%zu runs, detected=%zu, inexact=%zu, readout != dealer XOR agents at %zu/%zu positions, %.2f s "
                "(limit 30 s)",
                runs, detected, inexact, xor_mismatch, positions, elapsed));
}

void improved_defeats_attack() {
    const double p = oracle::substituted_decoy_pass_rate();
    info(fmt("oracle: substituted H-decoy pass rate p = %.6f", p));
    ScenarioConfig c;
    c.protocol = ProtocolKind::Improved;
    c.agent_count = 3;
    c.n_pairs = 64;
    c.h_decoy_count = 8;
    c.adversary.kind = AdversaryKind::BobSwapAttack;

    // Per-decoy rate: run the step-6 check to completion on every trial.
    c.error_threshold = 1.0;
    const auto rate_batch = run_batch(spec_for(c, 500));
    std::size_t samples = 0;
    std::size_t mismatches = 0;
    for (const auto& a : rate_batch.stats.checks) {
        if (a.check_id == "step6") {
            samples = a.samples;
            mismatches = a.mismatches;
        }
    }
    const double pass = samples == 0 ? 0.0 : 1.0 - static_cast<double>(mismatches) / static_cast<double>(samples);

    // Detection: the real zero threshold.
    c.error_threshold = 0.0;
    const auto det_batch = run_batch(spec_for(c, 500));
    const double expected = 1.0 - std::pow(p, 8);
    const double sigma = std::sqrt(expected * (1.0 - expected) / 500.0);
    const double tol = std::max(3.0 * sigma, 1.0 / 500.0);
    const double detection = det_batch.stats.detection_frequency;
    const bool ok = samples == 4000 && std::abs(pass - p) <= 0.03 && std::abs(detection - expected) <= tol;
    verdict(5, ok, "improved protocol detects the swap attack",
            fmt("per-decoy pass %.4f over %zu decoys (oracle %.4f +/- 0.03); detection %.4f vs 1-p^8 = %.6f "
                "(3 sigma band %.4f)",
                pass, samples, p, detection, expected, tol));
}

struct EveCase {
    ProtocolKind protocol;
    std::string hop;
    EvePolicy policy;
    std::string check;
    double expected;
};

void intercept_resend_baselines() {
    const double zx = oracle::intercept_resend_check_error(0.5);
    const double dz = oracle::decoy_error(1.0);
    const double dx = oracle::decoy_error(0.0);
    const std::vector<EveCase> cases = {
        {ProtocolKind::Original, "S_A:agent0->dealer", EvePolicy::UniformRandom, "zx_first", zx},
        {ProtocolKind::Original, "S_C:agent0->agent1", EvePolicy::UniformRandom, "zx_second", zx},
        {ProtocolKind::Improved, "S_T:dealer->agent0", EvePolicy::UniformRandom, "zx_first", zx},
        {ProtocolKind::Improved, "S_T:agent0->agent1", EvePolicy::UniformRandom, "hop_decoy_0", zx},
        {ProtocolKind::Improved, "S_T:dealer->agent2", EvePolicy::FixedZ, "decoy_S_T", dz},
        {ProtocolKind::Improved, "S_T:dealer->agent2", EvePolicy::FixedX, "decoy_S_T", dx},
        {ProtocolKind::Improved, "S_A:dealer->agent2", EvePolicy::FixedZ, "decoy_S_A", dz},
        {ProtocolKind::Improved, "S_A:dealer->agent2", EvePolicy::FixedX, "decoy_S_A", dx},
    };
    bool ok = true;
    std::string worst;
    double worst_gap = -1;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& e = cases[i];
        ScenarioConfig c;
        c.protocol = e.protocol;
        c.error_threshold = 1.0;
        c.master_seed = 60 + i;
        c.adversary.kind = AdversaryKind::EveInterceptResend;
        c.adversary.hop = Hop::parse(e.hop);
        c.adversary.eve_policy = e.policy;
        if (e.protocol == ProtocolKind::Original) {
            c.n_pairs = 8000;  // 2000 samples in whichever Z/X check is targeted
            c.sample_fraction = e.check == "zx_first" ? 0.25 : 0.5;
        } else {
            c.agent_count = 3;
            c.n_pairs = 8000;
            c.decoy_photon_count = 2000;
            c.h_decoy_count = 2000;
        }
        const auto r = run_scenario(c);
        const auto* check = r.check(e.check);
        const bool here = check != nullptr && check->samples >= 2000 && std::abs(check->error_rate - e.expected) <= 0.03;
        ok = ok && here;
        const double gap = check ? std::abs(check->error_rate - e.expected) : 1.0;
        info(fmt("%-20s %-15s %-12s samples=%zu error=%.4f (oracle %.4f)", e.hop.c_str(),
                 std::string(to_string(e.policy)).c_str(), e.check.c_str(), check ? check->samples : 0,
                 check ? check->error_rate : -1.0, e.expected));
        if (gap > worst_gap) {
            worst_gap = gap;
            worst = e.hop + "/" + e.check;
        }
    }
    verdict(6, ok, "intercept-resend baselines",
            fmt("%zu hop/check cases within +/- 0.03 of the oracle; largest gap %.4f at %s", cases.size(), worst_gap,
                worst.c_str()));
}

void oracle_equivalence() {
    std::size_t single = 0;
    for (auto label : kAllBellLabels) {
        for (auto p : kAllPaulis) {
            const BellLabel frame = apply_to_pair(label, p);
            single += oracle::pauli_on_pair(label, p, 0) != frame;
            QuantumRegister r(17);
            auto [a, b] = r.prepare_bell(label);
            r.apply_gate(a, p.gate());
            single += r.measure_bell(a, b) != frame;
        }
    }

    std::size_t swaps = 0;
    std::size_t combos_seen = 0;
    for (const auto& row : oracle::swap_table()) swaps += swap_rule(row.left, row.right, row.measured) != row.result;
    for (auto left : kAllBellLabels) {
        for (auto right : kAllBellLabels) {
            std::map<BellLabel, int> outcomes;
            for (std::uint64_t seed = 0; seed < 64; ++seed) {
                QuantumRegister r(seed);
                auto [p1, p2] = r.prepare_bell(left);
                auto [p3, p4] = r.prepare_bell(right);
                const BellLabel m = r.measure_bell(p2, p3);
                ++outcomes[m];
                swaps += r.measure_bell(p1, p4) != swap_rule(left, right, m);
            }
            combos_seen += outcomes.size();
        }
    }

    std::size_t circuits = 0;
    Stream pick(2024, 5);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        QuantumRegister r(i);
        BellLabel frame = kAllBellLabels[pick.below(4)];
        auto [a, b] = r.prepare_bell(frame);
        const auto depth = 1 + pick.below(8);
        for (std::uint64_t k = 0; k < depth; ++k) {
            const Pauli p = kAllPaulis[pick.below(4)];
            r.apply_gate(pick.bit() ? a : b, p.gate());
            frame = apply_to_pair(frame, p);
        }
        circuits += r.measure_bell(a, b) != frame;
    }
    const bool ok = single == 0 && swaps == 0 && circuits == 0 && combos_seen == 64;
    verdict(7, ok, "frame predictions equal statevector outcomes",
            fmt("discrepancies: single-pair %zu/16, swap %zu (outcome combinations seen %zu/64), random circuits "
                "%zu/10000",
                single, swaps, combos_seen, circuits));
}

void engine_invariants() {
    QuantumRegister reg(77);
    Stream pick(77, 99);
    std::vector<PhotonId> live;
    double worst = 0;
    const Gate gates[] = {Gate::I, Gate::X, Gate::iY, Gate::Z, Gate::H};
    auto take = [&]() {
        const auto i = pick.below(live.size());
        const auto p = live[i];
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        return p;
    };
    std::size_t ops = 0;
    while (ops < 100000) {
        const auto choice = live.size() < 4 ? pick.below(2) : pick.below(6);
        if (live.size() > 40 && choice < 2) continue;
        switch (choice) {
            case 0: {
                auto [a, b] = reg.prepare_bell(kAllBellLabels[pick.below(4)]);
                live.push_back(a);
                live.push_back(b);
                break;
            }
            case 1: live.push_back(reg.prepare_single(kAllSingleStates[pick.below(4)])); break;
            case 2:
            case 3: reg.apply_gate(live[pick.below(live.size())], gates[pick.below(5)]); break;
            case 4: reg.measure_single(take(), pick.bit() ? Basis::Z : Basis::X); break;
            default: {
                const auto a = take();
                const auto b = take();
                reg.measure_bell(a, b);
            }
        }
        ++ops;
        worst = std::max(worst, reg.max_norm_error());
    }

    bool identical = true;
    for (auto protocol : {ProtocolKind::Original, ProtocolKind::Improved}) {
        for (auto adversary : {AdversaryKind::None, AdversaryKind::BobSwapAttack}) {
            ScenarioConfig c;
            c.protocol = protocol;
            c.agent_count = protocol == ProtocolKind::Original ? 2 : 4;
            c.master_seed = 31;
            c.adversary.kind = adversary;
            identical = identical && to_json(run_scenario(c)).dump() == to_json(run_scenario(c)).dump();
        }
    }

    ScenarioConfig c;
    c.protocol = ProtocolKind::Improved;
    c.agent_count = 3;
    c.adversary.kind = AdversaryKind::BobSwapAttack;
    auto spec = spec_for(c, 200);
    const auto serial = jsonl(run_batch(spec));
    spec.threads = 4;
    const bool parallel_same = jsonl(run_batch(spec)) == serial;

    const bool ok = worst <= 1e-12 && identical && parallel_same;
    verdict(8, ok, "engine invariants",
            fmt("max norm error %.2e over %zu ops (limit 1e-12); replay identical=%s; parallel == serial=%s", worst,
                ops, identical ? "yes" : "no", parallel_same ? "yes" : "no"));
}

}  // namespace

int main() {
    const std::pair<int, void (*)()> criteria[] = {
        {1, honest_original},         {2, attack_on_original},         {3, decode_conditional_on_cover},
        {4, honest_improved},         {5, improved_defeats_attack},    {6, intercept_resend_baselines},
        {7, oracle_equivalence},      {8, engine_invariants},
    };
    for (const auto& [id, run] : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            verdict(id, false, "criterion raised an exception", e.what());
        }
    }
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
