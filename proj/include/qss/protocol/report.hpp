#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qss/pauli.hpp"
#include "qss/protocol/channel.hpp"
#include "qss/protocol/config.hpp"

namespace qss {

struct CheckReport {
    std::string check_id;
    std::size_t samples = 0;
    std::size_t mismatches = 0;
    double error_rate = 0.0;
    bool passed = true;

    /// Fills error_rate and verdict; an empty sample passes.
    static CheckReport make(std::string id, std::size_t samples, std::size_t mismatches, double threshold);
};

struct RunReport {
    ScenarioConfig config;
    std::vector<CheckReport> checks;
    MessageBits dealer_message;
    std::vector<std::size_t> message_positions;
    /// Collaborative decode, keyed by the party that performed the readout.
    std::map<std::string, MessageBits> recovered;
    std::optional<MessageBits> eavesdropper_message;
    /// The receiver's Bell readout per message position (combined Pauli).
    std::vector<Pauli> readout;
    /// Paulis published during collaboration, one row per Pauli-applying agent.
    std::vector<std::vector<Pauli>> agent_paulis;
    bool detected = false;
    Transcript transcript;

    std::map<std::string, bool> detection_flags() const;
    const CheckReport* check(std::string_view id) const;
};

using ordered_json = nlohmann::ordered_json;

std::string message_string(const MessageBits& bits);

ordered_json to_json(const ScenarioConfig& config);
ordered_json to_json(const CheckReport& check);
ordered_json to_json(const Transcript& transcript);
ordered_json to_json(const RunReport& report, bool include_transcript = true);

}  // namespace qss
