#include "qss/protocol/report.hpp"

namespace qss {

CheckReport CheckReport::make(std::string id, std::size_t samples, std::size_t mismatches, double threshold) {
    CheckReport r;
    r.check_id = std::move(id);
    r.samples = samples;
    r.mismatches = mismatches;
    r.error_rate = samples == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(samples);
    r.passed = r.error_rate <= threshold;
    return r;
}

std::map<std::string, bool> RunReport::detection_flags() const {
    std::map<std::string, bool> flags;
    for (const auto& c : checks) flags[c.check_id] = !c.passed;
    return flags;
}

const CheckReport* RunReport::check(std::string_view id) const {
    for (const auto& c : checks) {
        if (c.check_id == id) return &c;
    }
    return nullptr;
}

std::string message_string(const MessageBits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto s : bits) out.push_back(static_cast<char>('0' + s));
    return out;
}

ordered_json to_json(const ScenarioConfig& c) {
    ordered_json j;
    j["protocol"] = to_string(c.protocol);
    j["n_pairs"] = c.n_pairs;
    j["agent_count"] = c.agent_count;
    j["sample_fraction"] = c.sample_fraction;
    j["h_decoy_count"] = c.h_decoy_count ? ordered_json(*c.h_decoy_count) : ordered_json(nullptr);
    j["decoy_photon_count"] = c.decoy_photon_count;
    j["error_threshold"] = c.error_threshold;
    j["master_seed"] = c.master_seed;
    ordered_json adv;
    adv["kind"] = to_string(c.adversary.kind);
    adv["hop"] = c.adversary.hop ? ordered_json(c.adversary.hop->str()) : ordered_json(nullptr);
    adv["eve_basis"] = to_string(c.adversary.eve_policy);
    adv["falsify_collaboration"] = c.adversary.falsify_collaboration;
    j["adversary"] = adv;
    return j;
}

ordered_json to_json(const CheckReport& c) {
    ordered_json j;
    j["id"] = c.check_id;
    j["samples"] = c.samples;
    j["mismatches"] = c.mismatches;
    j["error_rate"] = c.error_rate;
    j["verdict"] = c.passed ? "pass" : "abort";
    return j;
}

ordered_json to_json(const Transcript& t) {
    ordered_json events = ordered_json::array();
    for (const auto& e : t.events()) {
        ordered_json j;
        j["speaker"] = e.speaker;
        j["kind"] = e.kind;
        j["context"] = e.context;
        j["values"] = e.values;
        events.push_back(std::move(j));
    }
    return events;
}

ordered_json to_json(const RunReport& r, bool include_transcript) {
    ordered_json j;
    j["config"] = to_json(r.config);
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    j["detected"] = r.detected;
    j["dealer_message"] = message_string(r.dealer_message);
    ordered_json recovered = ordered_json::object();
    for (const auto& [party, msg] : r.recovered) recovered[party] = message_string(msg);
    j["recovered"] = recovered;
    j["eavesdropper_message"] =
        r.eavesdropper_message ? ordered_json(message_string(*r.eavesdropper_message)) : ordered_json(nullptr);
    if (include_transcript) j["transcript"] = to_json(r.transcript);
    return j;
}

}  // namespace qss
