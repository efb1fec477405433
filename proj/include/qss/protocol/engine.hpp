#pragma once

#include <memory>

#include "qss/adversary.hpp"
#include "qss/protocol/config.hpp"
#include "qss/protocol/report.hpp"

namespace qss {

/// Builds the adversary described by `config.adversary`, seeded from the
/// trial's master seed.
std::unique_ptr<Adversary> make_adversary(const ScenarioConfig& config);

/// Three-party protocol: agent0 prepares ψ− pairs and sends S_A to the dealer
/// (first Z/X check), encrypts S_C with random Paulis and sends it to agent1
/// (second Z/X check, agent0 publishes its Paulis on the samples), the dealer
/// encodes the message plus random-Pauli samples on S_A and sends it to
/// agent1, who Bell-measures every pair (final sample check, then
/// collaborative decode).
///
/// Aborted checks are reported, not thrown; nothing after an abort runs.
RunReport run_original(const ScenarioConfig& config);
RunReport run_original(const ScenarioConfig& config, Adversary& adversary);

/// M-agent protocol with Hadamard decoys and checking photons. The dealer
/// prepares ψ− pairs and sends S_T along agent0 → … → agent(M-2) → dealer;
/// each of these agents turns a fresh sample into H-decoys and Pauli-encrypts
/// the rest. Each hop's decoys are checked by the dealer and the receiver
/// (the dealer Bell-verifies the last hop). The dealer then encodes the
/// message on S_A, mixes checking photons into S_T and S_A, and sends both to
/// agent(M-1), who reads out the combined Pauli per pair.
RunReport run_improved(const ScenarioConfig& config);
RunReport run_improved(const ScenarioConfig& config, Adversary& adversary);

/// Dispatches on config.protocol.
RunReport run_scenario(const ScenarioConfig& config);

}  // namespace qss
