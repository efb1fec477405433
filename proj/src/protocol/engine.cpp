#include "qss/protocol/engine.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <map>
#include <stdexcept>

#include "qss/protocol/checks.hpp"
#include "qss/protocol/sequence.hpp"

namespace qss {

std::unique_ptr<Adversary> make_adversary(const ScenarioConfig& config) {
    const auto& spec = config.adversary;
    switch (spec.kind) {
        case AdversaryKind::None: return std::make_unique<NoAdversary>();
        case AdversaryKind::EveInterceptResend:
            if (!spec.hop) throw ConfigError("eve_intercept_resend needs a hop");
            return std::make_unique<EveInterceptResend>(*spec.hop, spec.eve_policy,
                                                        Stream(config.master_seed, streams::kAdversary));
        case AdversaryKind::BobSwapAttack: {
            const auto hops = hops_for(config);
            return std::make_unique<BobSwapAttack>(hops.back(), spec.falsify_collaboration,
                                                   Stream(config.master_seed, streams::kAdversary));
        }
    }
    throw ConfigError("unknown adversary");
}

namespace {

Pauli random_pauli(Stream& rng) { return Pauli::from_symbol(static_cast<std::uint8_t>(rng.below(4))); }

std::vector<std::int64_t> symbols(const std::vector<Pauli>& ps) {
    std::vector<std::int64_t> out;
    for (Pauli p : ps) out.push_back(p.symbol());
    return out;
}

/// State shared by both protocol runs: register, parties, transcript, and the
/// adversary wiring.
class Run {
  public:
    Run(const ScenarioConfig& config, Adversary& adversary)
        : config_(config),
          adversary_(adversary),
          reg_(config.master_seed, streams::kRegister),
          dealer_(std::string(kDealer), reg_, config.master_seed, streams::kDealer),
          outsider_lab_("adversary", reg_) {
        validate(config);
        for (std::size_t k = 0; k < config.agent_count; ++k) {
            agents_.emplace_back(agent_name(k), reg_, config.master_seed, streams::kAgentBase + k);
        }
        honest_paulis_.resize(config.agent_count);
        report_.config = config;
        report_.transcript.set_listener([this](const Event& e) { adversary_.on_event(e); });
    }

    RunReport original();
    RunReport improved();

  private:
    Transcript& transcript() { return report_.transcript; }

    bool controlled(std::size_t agent) const {
        const auto a = adversary_.impersonated_agent();
        return a && *a == agent;
    }

    Lab& adversary_lab() {
        const auto a = adversary_.impersonated_agent();
        return a ? agents_.at(*a).lab : outsider_lab_;
    }

    std::vector<PhotonId> transmit(const Hop& hop, std::vector<PhotonId> photons, Lab& from, Participant& to) {
        const bool intercepted = adversary_.intercepts(hop);
        Lab& via = intercepted ? adversary_lab() : to.lab;
        for (PhotonId p : photons) from.give(p, via);
        if (intercepted) {
            const std::size_t count = photons.size();
            adversary_.on_transit(hop, photons, via, transcript());
            if (photons.size() != count) throw std::logic_error("adversary changed the number of photons in transit");
            for (PhotonId p : photons) via.give(p, to.lab);
        }
        transcript().announce(to.name, "receipt", hop.str(), {static_cast<std::int64_t>(photons.size())});
        return photons;
    }

    void transmit_positions(const Hop& hop, PhotonSequence& seq, const std::vector<std::size_t>& positions,
                            std::vector<PhotonId> photons, Lab& from, Participant& to) {
        photons = transmit(hop, std::move(photons), from, to);
        for (std::size_t j = 0; j < positions.size(); ++j) seq.replace(positions[j], photons[j]);
    }

    std::vector<Pauli> request_paulis(std::size_t agent, const std::string& context, AnnouncementKind kind,
                                      const std::vector<std::size_t>& positions) {
        std::vector<Pauli> out;
        if (controlled(agent)) {
            out = adversary_.announce({context, kind, positions}, agents_[agent].lab, transcript());
            if (out.size() != positions.size()) throw std::logic_error("adversary announced the wrong number of Paulis");
        } else {
            for (auto pos : positions) {
                auto it = honest_paulis_[agent].find(pos);
                if (it == honest_paulis_[agent].end()) {
                    throw std::logic_error(agent_name(agent) + " applied no Pauli at position " + std::to_string(pos));
                }
                out.push_back(it->second);
            }
        }
        transcript().announce(agent_name(agent), "paulis", context, symbols(out));
        return out;
    }

    std::vector<std::size_t> draw_and_mark(Stream& rng, std::size_t count, Role role,
                                           std::initializer_list<PhotonSequence*> seqs) {
        const auto candidates = (*seqs.begin())->unassigned();
        auto chosen = draw_positions(rng, candidates, std::min(count, candidates.size()));
        for (auto* s : seqs) {
            for (auto pos : chosen) s->assign(pos, role);
        }
        return chosen;
    }

    /// Records a check; returns false when the protocol must stop.
    bool record(CheckReport check) {
        const bool ok = check.passed;
        report_.checks.push_back(std::move(check));
        if (!ok) {
            report_.detected = true;
            transcript().announce(std::string(kDealer), "abort", report_.checks.back().check_id);
        }
        return ok;
    }

    void collaborative_decode(const std::vector<BellLabel>& outcomes, const std::vector<std::size_t>& agents,
                              const std::string& receiver) {
        const auto& positions = report_.message_positions;
        for (auto l : outcomes) report_.readout.push_back(decode_bell_to_pauli(l));
        for (auto k : agents) {
            report_.agent_paulis.push_back(request_paulis(k, "collaboration", AnnouncementKind::Collaboration, positions));
        }
        std::vector<Pauli> dealer_ops;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            std::vector<Pauli> column;
            for (const auto& row : report_.agent_paulis) column.push_back(row[i]);
            dealer_ops.push_back(recover_dealer_pauli(report_.readout[i], column));
        }
        report_.recovered[receiver] = decode_message(dealer_ops);
    }

    RunReport finish() {
        const auto inferred = adversary_.inferred_paulis();
        if (!inferred.empty() && !report_.message_positions.empty()) {
            MessageBits guess;
            for (auto pos : report_.message_positions) {
                auto it = inferred.find(pos);
                if (it == inferred.end()) break;
                guess.push_back(it->second.symbol());
            }
            if (guess.size() == report_.message_positions.size()) report_.eavesdropper_message = std::move(guess);
        }
        report_.transcript.set_listener(nullptr);
        return std::move(report_);
    }

    const ScenarioConfig& config_;
    Adversary& adversary_;
    QuantumRegister reg_;
    Participant dealer_;
    std::deque<Participant> agents_;
    Lab outsider_lab_;
    std::vector<std::map<std::size_t, Pauli>> honest_paulis_;
    RunReport report_;
};

RunReport Run::original() {
    const double threshold = config_.error_threshold;
    const std::size_t n = config_.n_pairs;
    Participant& alice = dealer_;
    Participant& bob = agents_[0];
    Participant& charlie = agents_[1];
    const auto hops = hops_for(config_);

    PhotonSequence s_a("S_A");
    PhotonSequence s_c("S_C");
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, c] = bob.lab.prepare_bell(BellLabel::PsiMinus);
        s_a.push_back(a);
        s_c.push_back(c);
    }

    // S_A to the dealer, first check.
    {
        auto all = s_a.unassigned();
        transmit_positions(hops[0], s_a, all, s_a.photons_at(all), bob.lab, alice);
        auto sample = draw_and_mark(alice.rng, sample_count(config_.sample_fraction, all.size()), Role::ZxSample,
                                    {&s_a, &s_c});
        transcript().announce(alice.name, "sample_positions", "zx_first", to_values(sample));
        const std::vector<Pauli> frames(sample.size(), Pauli::I());
        if (!record(check_zx("zx_first", sample, frames, {bob, s_c}, {alice, s_a}, transcript(), threshold))) {
            return finish();
        }
    }

    // agent0 encrypts S_C and sends it to agent1, second check.
    {
        const auto remaining = s_c.unassigned();
        std::vector<PhotonId> photons = s_c.photons_at(remaining);
        if (controlled(0)) {
            photons = adversary_.forward({hops[1], remaining, photons, {}}, bob.lab, transcript());
        } else {
            for (std::size_t j = 0; j < remaining.size(); ++j) {
                const Pauli u = random_pauli(bob.rng);
                honest_paulis_[0][remaining[j]] = u;
                bob.lab.apply(photons[j], u);
            }
        }
        transmit_positions(hops[1], s_c, remaining, std::move(photons), bob.lab, charlie);

        auto sample = draw_and_mark(alice.rng, sample_count(config_.sample_fraction, remaining.size()),
                                    Role::ZxSample, {&s_a, &s_c});
        transcript().announce(alice.name, "sample_positions", "zx_second", to_values(sample));
        const auto frames = request_paulis(0, "zx_second", AnnouncementKind::ZxCheck, sample);
        if (!record(check_zx("zx_second", sample, frames, {charlie, s_c}, {alice, s_a}, transcript(), threshold))) {
            return finish();
        }
    }

    // Dealer encodes: random Paulis on her samples, the message on the rest.
    const auto remaining = s_a.unassigned();
    const auto samples =
        draw_and_mark(alice.rng, sample_count(config_.sample_fraction, remaining.size()), Role::DealerSample,
                      {&s_a, &s_c});
    const auto message_positions = s_a.unassigned();
    for (auto pos : message_positions) {
        s_a.assign(pos, Role::Message);
        s_c.assign(pos, Role::Message);
    }
    report_.message_positions = message_positions;
    std::map<std::size_t, Pauli> dealer_ops;
    for (auto pos : samples) dealer_ops[pos] = random_pauli(alice.rng);
    for (std::size_t i = 0; i < message_positions.size(); ++i) {
        report_.dealer_message.push_back(static_cast<std::uint8_t>(alice.rng.below(4)));
    }
    const auto message_ops = encode_message(report_.dealer_message);
    for (std::size_t i = 0; i < message_positions.size(); ++i) dealer_ops[message_positions[i]] = message_ops[i];
    for (auto pos : remaining) alice.lab.apply(s_a.photon(pos), dealer_ops.at(pos));
    transmit_positions(hops[2], s_a, remaining, s_a.photons_at(remaining), alice.lab, charlie);

    std::map<std::size_t, BellLabel> outcome_at;
    for (auto pos : remaining) outcome_at[pos] = charlie.lab.measure_bell(s_a.photon(pos), s_c.photon(pos));

    // Final check on the dealer's samples.
    {
        transcript().announce(alice.name, "sample_positions", "final_samples", to_values(samples));
        const auto bob_ops = request_paulis(0, "final_samples", AnnouncementKind::DealerSampleCheck, samples);
        std::vector<int> announced_outcomes;
        for (auto pos : samples) announced_outcomes.push_back(static_cast<int>(outcome_at.at(pos)));
        transcript().announce(charlie.name, "bell_outcomes", "final_samples", to_values(announced_outcomes));
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const Pauli expected = compose(dealer_ops.at(samples[i]), bob_ops[i]);
            if (!(decode_bell_to_pauli(outcome_at.at(samples[i])) == expected)) ++mismatches;
        }
        auto check = CheckReport::make("final_samples", samples.size(), mismatches, threshold);
        transcript().announce(alice.name, "verdict", "final_samples",
                              {check.passed ? 1 : 0, static_cast<std::int64_t>(check.samples),
                               static_cast<std::int64_t>(check.mismatches)});
        if (!record(std::move(check))) return finish();
    }

    std::vector<BellLabel> outcomes;
    for (auto pos : message_positions) outcomes.push_back(outcome_at.at(pos));
    collaborative_decode(outcomes, {0}, charlie.name);
    return finish();
}

RunReport Run::improved() {
    const double threshold = config_.error_threshold;
    const std::size_t n = config_.n_pairs;
    const std::size_t m = config_.agent_count;
    const std::size_t last_pauli_agent = m - 2;
    Participant& alice = dealer_;
    Participant& zach = agents_[m - 1];
    const auto hops = hops_for(config_);

    PhotonSequence s_a("S_A");
    PhotonSequence s_t("S_T");
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, t] = alice.lab.prepare_bell(BellLabel::PsiMinus);
        s_a.push_back(a);
        s_t.push_back(t);
    }

    // S_T to agent0, first check.
    {
        auto all = s_t.unassigned();
        transmit_positions(hops[0], s_t, all, s_t.photons_at(all), alice.lab, agents_[0]);
        auto sample = draw_and_mark(alice.rng, sample_count(config_.sample_fraction, all.size()), Role::ZxSample,
                                    {&s_a, &s_t});
        transcript().announce(alice.name, "sample_positions", "zx_first", to_values(sample));
        const std::vector<Pauli> frames(sample.size(), Pauli::I());
        if (!record(check_zx("zx_first", sample, frames, {agents_[0], s_t}, {alice, s_a}, transcript(), threshold))) {
            return finish();
        }
    }

    // Chain of Pauli-applying agents, each leaving H-decoys for the next hop.
    for (std::size_t k = 0; k <= last_pauli_agent; ++k) {
        Participant& agent = agents_[k];
        const bool back_to_dealer = k == last_pauli_agent;
        Participant& receiver = back_to_dealer ? alice : agents_[k + 1];
        const Hop& hop = hops[k + 1];
        const std::string check_id = back_to_dealer ? "step6" : "hop_decoy_" + std::to_string(k);

        const auto available = s_t.unassigned();
        const std::size_t count = config_.h_decoy_count ? *config_.h_decoy_count
                                                        : sample_count(config_.sample_fraction, available.size());
        const auto sample = draw_and_mark(agent.rng, count, Role::HDecoy, {&s_t, &s_a});

        std::vector<PhotonId> photons = s_t.photons_at(available);
        if (controlled(k)) {
            photons = adversary_.forward({hop, available, photons, sample}, agent.lab, transcript());
        } else {
            for (std::size_t j = 0; j < available.size(); ++j) {
                if (std::binary_search(sample.begin(), sample.end(), available[j])) {
                    agent.lab.apply(photons[j], Gate::H);
                } else {
                    const Pauli u = random_pauli(agent.rng);
                    honest_paulis_[k][available[j]] = u;
                    agent.lab.apply(photons[j], u);
                }
            }
        }
        transmit_positions(hop, s_t, available, std::move(photons), agent.lab, receiver);
        transcript().announce(agent.name, "sample_positions", check_id, to_values(sample));

        std::vector<Pauli> frames(sample.size(), Pauli::I());
        for (std::size_t j = 0; j < k; ++j) {
            const auto ops = request_paulis(j, check_id, AnnouncementKind::HDecoyCheck, sample);
            for (std::size_t i = 0; i < sample.size(); ++i) frames[i] = compose(frames[i], ops[i]);
        }

        CheckReport check;
        if (back_to_dealer) {
            check = verify_step6(check_id, sample, frames, alice, s_a, s_t, transcript(), threshold);
        } else {
            for (auto pos : sample) receiver.lab.apply(s_t.photon(pos), Gate::H);
            check = check_zx(check_id, sample, frames, {receiver, s_t}, {alice, s_a}, transcript(), threshold);
        }
        if (!record(std::move(check))) return finish();
    }

    // Message encoding on S_A.
    const auto message_positions = s_a.unassigned();
    for (auto pos : message_positions) {
        s_a.assign(pos, Role::Message);
        s_t.assign(pos, Role::Message);
    }
    report_.message_positions = message_positions;
    for (std::size_t i = 0; i < message_positions.size(); ++i) {
        report_.dealer_message.push_back(static_cast<std::uint8_t>(alice.rng.below(4)));
    }
    const auto message_ops = encode_message(report_.dealer_message);
    for (std::size_t i = 0; i < message_positions.size(); ++i) {
        alice.lab.apply(s_a.photon(message_positions[i]), message_ops[i]);
    }

    // Mixes checking photons into a copy of the sequence, sends it to the
    // last agent and verifies them. Returns the pair photons received, in
    // message-position order, or nothing if the check aborted.
    auto send_with_checks = [&](const Hop& hop, const PhotonSequence& seq,
                                const std::string& check_id) -> std::optional<std::vector<PhotonId>> {
        const std::size_t d = config_.decoy_photon_count;
        const std::size_t total = message_positions.size() + d;
        std::vector<std::size_t> slots(total);
        for (std::size_t i = 0; i < total; ++i) slots[i] = i;
        const auto decoy_slots = draw_positions(alice.rng, slots, d);

        PhotonSequence mixed(seq.name() + "+checks");
        std::vector<CheckingPhoton> decoys;
        std::size_t next_message = 0;
        for (std::size_t slot = 0, di = 0; slot < total; ++slot) {
            if (di < decoy_slots.size() && decoy_slots[di] == slot) {
                const SingleState state = kAllSingleStates[alice.rng.below(4)];
                mixed.push_back(alice.lab.prepare_single(state), Role::CheckingPhoton);
                decoys.push_back({slot, state});
                ++di;
            } else {
                mixed.push_back(seq.photon(message_positions[next_message++]), Role::Message);
            }
        }
        std::vector<PhotonId> sent;
        for (std::size_t slot = 0; slot < total; ++slot) sent.push_back(mixed.photon(slot));
        const auto received = transmit(hop, std::move(sent), alice.lab, zach);

        if (!record(decoy_round(check_id, decoys, received, alice, zach, transcript(), threshold))) {
            return std::nullopt;
        }
        std::vector<PhotonId> pairs;
        for (std::size_t slot = 0; slot < total; ++slot) {
            if (mixed.role(slot) == Role::Message) pairs.push_back(received[slot]);
        }
        return pairs;
    };

    const auto t_photons = send_with_checks(hops[hops.size() - 2], s_t, "decoy_S_T");
    if (!t_photons) return finish();
    const auto a_photons = send_with_checks(hops.back(), s_a, "decoy_S_A");
    if (!a_photons) return finish();

    std::vector<BellLabel> outcomes;
    for (std::size_t i = 0; i < message_positions.size(); ++i) {
        outcomes.push_back(zach.lab.measure_bell((*a_photons)[i], (*t_photons)[i]));
    }
    std::vector<std::size_t> pauli_agents;
    for (std::size_t k = 0; k <= last_pauli_agent; ++k) pauli_agents.push_back(k);
    collaborative_decode(outcomes, pauli_agents, zach.name);
    return finish();
}

}  // namespace

RunReport run_original(const ScenarioConfig& config, Adversary& adversary) {
    if (config.protocol != ProtocolKind::Original) throw ConfigError("run_original needs protocol = original");
    return Run(config, adversary).original();
}

RunReport run_original(const ScenarioConfig& config) {
    validate(config);
    auto adversary = make_adversary(config);
    return run_original(config, *adversary);
}

RunReport run_improved(const ScenarioConfig& config, Adversary& adversary) {
    if (config.protocol != ProtocolKind::Improved) throw ConfigError("run_improved needs protocol = improved");
    return Run(config, adversary).improved();
}

RunReport run_improved(const ScenarioConfig& config) {
    validate(config);
    auto adversary = make_adversary(config);
    return run_improved(config, *adversary);
}

RunReport run_scenario(const ScenarioConfig& config) {
    return config.protocol == ProtocolKind::Original ? run_original(config) : run_improved(config);
}

}  // namespace qss
