#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/protocol/channel.hpp"

namespace qss {

enum class ProtocolKind { Original, Improved };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol_kind(std::string_view text);

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    ProtocolKind protocol = ProtocolKind::Original;
    std::size_t n_pairs = 64;
    /// Number of agents. The original protocol always has two.
    std::size_t agent_count = 2;
    /// Fraction of the still-unassigned positions drawn by each check.
    double sample_fraction = 0.25;
    /// Improved protocol: exact number of H-decoys each Pauli-applying agent
    /// draws, overriding sample_fraction for those checks.
    std::optional<std::size_t> h_decoy_count;
    /// Improved protocol: checking photons mixed into each of S_T and S_A.
    std::size_t decoy_photon_count = 16;
    double error_threshold = 0.0;
    std::uint64_t master_seed = 0;
    AdversarySpec adversary;
};

/// Number of samples a check draws from `available` positions.
std::size_t sample_count(double fraction, std::size_t available);

/// Sample counts in protocol order (checks on pair positions only) and the
/// number of message positions left afterwards.
struct SamplingPlan {
    std::vector<std::size_t> check_samples;
    std::size_t message_positions = 0;
};
SamplingPlan plan_sampling(const ScenarioConfig& config);

/// Every quantum transmission of the configured protocol, in order.
std::vector<Hop> hops_for(const ScenarioConfig& config);

/// Throws ConfigError describing the first problem found.
void validate(const ScenarioConfig& config);

}  // namespace qss
