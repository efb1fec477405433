#include "qss/protocol/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qss {

std::string_view to_string(ProtocolKind kind) { return kind == ProtocolKind::Original ? "original" : "improved"; }

ProtocolKind parse_protocol_kind(std::string_view text) {
    if (text == "original") return ProtocolKind::Original;
    if (text == "improved") return ProtocolKind::Improved;
    throw ConfigError("protocol must be 'original' or 'improved', got '" + std::string(text) + "'");
}

std::size_t sample_count(double fraction, std::size_t available) {
    const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(available) + 0.5));
    return std::min(n, available);
}

SamplingPlan plan_sampling(const ScenarioConfig& config) {
    SamplingPlan plan;
    std::size_t remaining = config.n_pairs;
    auto take = [&](std::size_t count) {
        count = std::min(count, remaining);
        plan.check_samples.push_back(count);
        remaining -= count;
    };
    take(sample_count(config.sample_fraction, remaining));  // first Z/X check
    if (config.protocol == ProtocolKind::Original) {
        take(sample_count(config.sample_fraction, remaining));  // second Z/X check
        take(sample_count(config.sample_fraction, remaining));  // dealer samples
    } else {
        for (std::size_t k = 0; k + 1 < config.agent_count; ++k) {
            if (config.h_decoy_count && *config.h_decoy_count > remaining) {
                plan.check_samples.push_back(*config.h_decoy_count);
                plan.message_positions = 0;
                return plan;
            }
            take(config.h_decoy_count ? *config.h_decoy_count : sample_count(config.sample_fraction, remaining));
        }
    }
    plan.message_positions = remaining;
    return plan;
}

std::vector<Hop> hops_for(const ScenarioConfig& config) {
    const std::string dealer(kDealer);
    if (config.protocol == ProtocolKind::Original) {
        return {{"S_A", agent_name(0), dealer}, {"S_C", agent_name(0), agent_name(1)}, {"S_A", dealer, agent_name(1)}};
    }
    std::vector<Hop> hops{{"S_T", dealer, agent_name(0)}};
    const std::size_t last_pauli_agent = config.agent_count - 2;
    for (std::size_t k = 0; k < last_pauli_agent; ++k) hops.push_back({"S_T", agent_name(k), agent_name(k + 1)});
    hops.push_back({"S_T", agent_name(last_pauli_agent), dealer});
    hops.push_back({"S_T", dealer, agent_name(config.agent_count - 1)});
    hops.push_back({"S_A", dealer, agent_name(config.agent_count - 1)});
    return hops;
}

void validate(const ScenarioConfig& config) {
    if (config.n_pairs == 0) throw ConfigError("n_pairs must be positive");
    if (!(config.sample_fraction > 0.0 && config.sample_fraction < 1.0)) {
        throw ConfigError("sample_fraction must lie in (0, 1)");
    }
    if (!(config.error_threshold >= 0.0 && config.error_threshold <= 1.0)) {
        throw ConfigError("error_threshold must lie in [0, 1]");
    }
    if (config.protocol == ProtocolKind::Original) {
        if (config.agent_count != 2) throw ConfigError("the original protocol has exactly 2 agents");
        if (config.h_decoy_count) throw ConfigError("h_decoy_count applies to the improved protocol only");
    } else if (config.agent_count < 2) {
        throw ConfigError("the improved protocol needs agent_count >= 2");
    }

    const auto plan = plan_sampling(config);
    if (plan.message_positions == 0) {
        throw ConfigError("sampling leaves no message positions (n_pairs=" + std::to_string(config.n_pairs) + ")");
    }

    const auto& adv = config.adversary;
    switch (adv.kind) {
        case AdversaryKind::None: break;
        case AdversaryKind::EveInterceptResend: {
            if (!adv.hop) throw ConfigError("eve_intercept_resend needs a hop");
            const auto hops = hops_for(config);
            if (std::find(hops.begin(), hops.end(), *adv.hop) == hops.end()) {
                throw ConfigError("hop " + adv.hop->str() + " is not a transmission of this protocol");
            }
            break;
        }
        case AdversaryKind::BobSwapAttack:
            if (adv.hop) throw ConfigError("bob_swap_attack takes no hop: it always acts as agent0");
            break;
    }
}

}  // namespace qss
