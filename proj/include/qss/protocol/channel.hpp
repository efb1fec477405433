#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qss {

/// Name of the dealer party.
inline constexpr std::string_view kDealer = "dealer";
/// "agent<k>".
std::string agent_name(std::size_t index);

/// One quantum transmission: which sequence travels from whom to whom.
/// Written as "S_A:agent0->dealer".
struct Hop {
    std::string sequence;
    std::string from;
    std::string to;

    std::string str() const;
    static Hop parse(std::string_view text);

    friend bool operator==(const Hop&, const Hop&) = default;
};

/// One public classical announcement.
struct Event {
    std::string speaker;
    std::string kind;     // receipt, sample_positions, bases, results, paulis, bell_outcomes, ...
    std::string context;  // check id, hop, or phase name
    std::vector<std::int64_t> values;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Append-only public classical log. Every announcement is forwarded to the
/// listener (the adversary's observation seam) as soon as it is made.
class Transcript {
  public:
    using Listener = std::function<void(const Event&)>;

    void set_listener(Listener listener) { listener_ = std::move(listener); }

    void announce(std::string speaker, std::string kind, std::string context, std::vector<std::int64_t> values = {});

    const std::vector<Event>& events() const { return events_; }

  private:
    std::vector<Event> events_;
    Listener listener_;
};

template <typename Range>
std::vector<std::int64_t> to_values(const Range& range) {
    std::vector<std::int64_t> out;
    for (const auto& v : range) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

}  // namespace qss
