#include "qss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qss/protocol/engine.hpp"

namespace qss {

namespace {

std::string receiver_of(const ScenarioConfig& c) {
    return c.protocol == ProtocolKind::Original ? agent_name(1) : agent_name(c.agent_count - 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !in.eof()) throw ConfigError("invalid value for " + key + ": '" + text + "'");
    if constexpr (std::is_unsigned_v<T>) {
        if (text.find('-') != std::string::npos) throw ConfigError(key + " must not be negative");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + text + "'");
}

}  // namespace

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "protocol",   "n_pairs",   "agent_count", "sample_fraction",       "h_decoy_count", "decoy_photon_count",
        "error_threshold", "adversary", "hop",     "eve_basis",            "falsify_collaboration",
        "trials",     "seed_base", "out",         "format",                "threads"};
    return keys;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("malformed config file: " + std::string(e.what()));
    }
    const auto& known = setting_keys();
    Settings settings;
    auto add = [&](const std::string& key, const std::string& value) {
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
        if (!settings.emplace(key, value).second) throw ConfigError("config key '" + key + "' given twice");
    };
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            add(name, node.data());
        } else {
            for (const auto& [key, leaf] : node) add(key, leaf.data());
        }
    }
    return settings;
}

ScenarioConfig scenario_from(const Settings& s) {
    ScenarioConfig c;
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = s.find(key);
        return it == s.end() ? nullptr : &it->second;
    };
    try {
        if (auto v = get("protocol")) c.protocol = parse_protocol_kind(*v);
        if (auto v = get("n_pairs")) c.n_pairs = parse_number<std::size_t>("n_pairs", *v);
        if (auto v = get("agent_count")) c.agent_count = parse_number<std::size_t>("agent_count", *v);
        if (auto v = get("sample_fraction")) c.sample_fraction = parse_number<double>("sample_fraction", *v);
        if (auto v = get("h_decoy_count")) c.h_decoy_count = parse_number<std::size_t>("h_decoy_count", *v);
        if (auto v = get("decoy_photon_count")) c.decoy_photon_count = parse_number<std::size_t>("decoy_photon_count", *v);
        if (auto v = get("error_threshold")) c.error_threshold = parse_number<double>("error_threshold", *v);
        if (auto v = get("adversary")) c.adversary.kind = parse_adversary_kind(*v);
        if (auto v = get("hop")) c.adversary.hop = Hop::parse(*v);
        if (auto v = get("eve_basis")) c.adversary.eve_policy = parse_eve_policy(*v);
        if (auto v = get("falsify_collaboration")) c.adversary.falsify_collaboration = parse_bool("falsify_collaboration", *v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

BatchSpec batch_spec_from(const Settings& s) {
    BatchSpec spec;
    spec.scenario = scenario_from(s);
    if (auto it = s.find("trials"); it != s.end()) spec.trials = parse_number<std::size_t>("trials", it->second);
    if (auto it = s.find("seed_base"); it != s.end()) spec.seed_base = parse_number<std::uint64_t>("seed_base", it->second);
    if (auto it = s.find("out"); it != s.end()) spec.out_path = it->second;
    if (auto it = s.find("threads"); it != s.end()) spec.threads = parse_number<unsigned>("threads", it->second);
    if (auto it = s.find("format"); it != s.end()) {
        if (it->second == "jsonl") {
            spec.format = OutputFormat::JsonLines;
        } else if (it->second == "table") {
            spec.format = OutputFormat::Table;
        } else {
            throw ConfigError("format must be jsonl or table");
        }
    }
    if (spec.trials < 1) throw ConfigError("trials must be at least 1");
    if (spec.threads < 1) throw ConfigError("threads must be at least 1");
    return spec;
}

TrialRecord summarize_trial(std::size_t trial, const RunReport& report) {
    TrialRecord r;
    r.trial = trial;
    r.seed = report.config.master_seed;
    r.detected = report.detected;
    r.checks = report.checks;
    r.message_length = report.dealer_message.size();
    const std::string receiver = receiver_of(report.config);
    auto it = report.recovered.find(receiver);
    r.recovered_exact[receiver] = it != report.recovered.end() && !report.dealer_message.empty() &&
                                  it->second == report.dealer_message;
    if (report.eavesdropper_message) {
        const auto& guess = *report.eavesdropper_message;
        r.eavesdropper_exact = !report.dealer_message.empty() && guess == report.dealer_message;
        for (std::size_t i = 0; i < guess.size() && i < report.dealer_message.size(); ++i) {
            ++r.symbol_counts[report.dealer_message[i]][guess[i]];
        }
    }
    return r;
}

Interval binomial_interval(std::size_t successes, std::size_t n) {
    if (n == 0) return {0.0, 1.0};
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)) + 0.5 / static_cast<double>(n);
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

double mutual_information(const std::array<std::array<std::size_t, 4>, 4>& counts) {
    double total = 0;
    std::array<double, 4> row{};
    std::array<double, 4> col{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const auto c = static_cast<double>(counts[i][j]);
            total += c;
            row[i] += c;
            col[j] += c;
        }
    }
    if (total == 0) return 0.0;
    double mi = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (counts[i][j] == 0) continue;
            const double pxy = static_cast<double>(counts[i][j]) / total;
            mi += pxy * std::log2(pxy * total * total / (row[i] * col[j]));
        }
    }
    return mi;
}

AggregateStats aggregate(const std::vector<TrialRecord>& trials, const std::string& receiver) {
    AggregateStats s;
    s.trials = trials.size();
    std::size_t detected = 0;
    std::size_t recovered = 0;
    std::size_t eaves_exact = 0;
    bool any_eaves = false;
    std::array<std::array<std::size_t, 4>, 4> counts{};
    for (const auto& t : trials) {
        if (t.detected) ++detected;
        if (auto it = t.recovered_exact.find(receiver); it != t.recovered_exact.end() && it->second) ++recovered;
        if (t.eavesdropper_exact) {
            any_eaves = true;
            if (*t.eavesdropper_exact) ++eaves_exact;
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) counts[i][j] += t.symbol_counts[i][j];
            }
        }
        for (const auto& c : t.checks) {
            auto agg = std::find_if(s.checks.begin(), s.checks.end(),
                                    [&](const CheckAggregate& a) { return a.check_id == c.check_id; });
            if (agg == s.checks.end()) {
                s.checks.emplace_back().check_id = c.check_id;
                agg = s.checks.end() - 1;
            }
            ++agg->trials;
            if (!c.passed) ++agg->aborts;
            agg->samples += c.samples;
            agg->mismatches += c.mismatches;
        }
    }
    for (auto& c : s.checks) {
        c.error_rate = c.samples == 0 ? 0.0 : static_cast<double>(c.mismatches) / static_cast<double>(c.samples);
        c.interval = binomial_interval(c.mismatches, c.samples);
    }
    const auto n = static_cast<double>(std::max<std::size_t>(trials.size(), 1));
    s.detection_frequency = static_cast<double>(detected) / n;
    s.detection_interval = binomial_interval(detected, trials.size());
    s.recovery_frequency[receiver] = static_cast<double>(recovered) / n;
    s.eavesdropper_exact_frequency = static_cast<double>(eaves_exact) / n;
    if (any_eaves) s.mutual_information_bits = mutual_information(counts);
    return s;
}

BatchResult run_batch(const BatchSpec& spec) {
    if (spec.trials < 1) throw ConfigError("trials must be at least 1");
    validate(spec.scenario);

    const auto start = std::chrono::steady_clock::now();
    BatchResult result;
    result.spec = spec;
    result.trials.resize(spec.trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < spec.trials; t = next++) {
            try {
                ScenarioConfig config = spec.scenario;
                config.master_seed = spec.seed_base + t;
                result.trials[t] = summarize_trial(t, run_scenario(config));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned workers = std::min<std::size_t>(spec.threads, spec.trials);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    result.stats = aggregate(result.trials, receiver_of(spec.scenario));
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

ordered_json interval_json(const Interval& i) { return ordered_json::array({i.low, i.high}); }

void emit_jsonl(const BatchResult& r, std::ostream& out) {
    for (const auto& t : r.trials) {
        ordered_json j;
        j["type"] = "trial";
        j["trial"] = t.trial;
        j["seed"] = t.seed;
        j["detected"] = t.detected;
        ordered_json checks = ordered_json::array();
        for (const auto& c : t.checks) checks.push_back(to_json(c));
        j["checks"] = checks;
        j["message_positions"] = t.message_length;
        j["recovered_exact"] = t.recovered_exact;
        j["eavesdropper_exact"] = t.eavesdropper_exact ? ordered_json(*t.eavesdropper_exact) : ordered_json(nullptr);
        out << j.dump() << '\n';
    }
    const auto& s = r.stats;
    ordered_json j;
    j["type"] = "summary";
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    ordered_json config = to_json(r.spec.scenario);
    config.erase("master_seed");
    j["config"] = config;
    j["trials"] = s.trials;
    j["seed_base"] = r.spec.seed_base;
    j["interval_method"] = "95% normal approximation with continuity correction";
    j["detection_frequency"] = s.detection_frequency;
    j["detection_interval"] = interval_json(s.detection_interval);
    ordered_json checks = ordered_json::array();
    for (const auto& c : s.checks) {
        ordered_json cj;
        cj["id"] = c.check_id;
        cj["trials"] = c.trials;
        cj["aborts"] = c.aborts;
        cj["samples"] = c.samples;
        cj["mismatches"] = c.mismatches;
        cj["error_rate"] = c.error_rate;
        cj["error_interval"] = interval_json(c.interval);
        checks.push_back(std::move(cj));
    }
    j["checks"] = checks;
    j["recovery_frequency"] = s.recovery_frequency;
    j["eavesdropper_exact_frequency"] = s.eavesdropper_exact_frequency;
    j["mutual_information_bits"] =
        s.mutual_information_bits ? ordered_json(*s.mutual_information_bits) : ordered_json(nullptr);
    out << j.dump() << '\n';
}

void emit_table(const BatchResult& r, std::ostream& out) {
    const auto& s = r.stats;
    const auto& c = r.spec.scenario;
    out << kToolName << ' ' << kToolVersion << '\n';
    out << "protocol=" << to_string(c.protocol) << " n_pairs=" << c.n_pairs << " agents=" << c.agent_count
        << " sample_fraction=" << c.sample_fraction << " decoys=" << c.decoy_photon_count
        << " threshold=" << c.error_threshold << " adversary=" << to_string(c.adversary.kind);
    if (c.adversary.hop) out << " hop=" << c.adversary.hop->str();
    out << '\n';
    out << "trials=" << s.trials << " seed_base=" << r.spec.seed_base << '\n';
    out << std::fixed << std::setprecision(4);
    out << std::left << std::setw(14) << "check" << std::right << std::setw(8) << "trials" << std::setw(8) << "aborts"
        << std::setw(10) << "samples" << std::setw(11) << "mismatch" << std::setw(10) << "rate" << std::setw(20)
        << "95% interval" << '\n';
    for (const auto& a : s.checks) {
        std::ostringstream ci;
        ci << std::fixed << std::setprecision(4) << '[' << a.interval.low << ", " << a.interval.high << ']';
        out << std::left << std::setw(14) << a.check_id << std::right << std::setw(8) << a.trials << std::setw(8)
            << a.aborts << std::setw(10) << a.samples << std::setw(11) << a.mismatches << std::setw(10)
            << a.error_rate << std::setw(20) << ci.str() << '\n';
    }
    auto label = [&out](const std::string& text) -> std::ostream& {
        return out << std::left << std::setw(25) << text << std::right;
    };
    label("detection frequency") << s.detection_frequency << "  [" << s.detection_interval.low << ", "
                                 << s.detection_interval.high << "]\n";
    for (const auto& [party, f] : s.recovery_frequency) label("recovery (" + party + ")") << f << '\n';
    label("eavesdropper exact") << s.eavesdropper_exact_frequency << '\n';
    if (s.mutual_information_bits) label("mutual information bits") << *s.mutual_information_bits << '\n';
    label("wall clock seconds") << s.wall_seconds << '\n';
    out << "intervals: 95% normal approximation with continuity correction\n";
}

}  // namespace

void emit_report(const BatchResult& result, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::JsonLines) {
        emit_jsonl(result, out);
    } else {
        emit_table(result, out);
    }
    if (!out) throw IoError("failed writing report");
}

void write_report(const BatchResult& result) {
    if (result.spec.out_path.empty()) {
        emit_report(result, result.spec.format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(result.spec.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + result.spec.out_path + " for writing");
    emit_report(result, result.spec.format, file);
    file.close();
    if (!file) throw IoError("failed writing " + result.spec.out_path);
}

}  // namespace qss
