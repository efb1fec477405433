#include "qss/protocol/channel.hpp"

#include <stdexcept>

namespace qss {

std::string agent_name(std::size_t index) { return "agent" + std::to_string(index); }

std::string Hop::str() const { return sequence + ":" + from + "->" + to; }

Hop Hop::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto arrow = text.find("->");
    if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon) {
        throw std::invalid_argument("hop must look like SEQ:from->to, got '" + std::string(text) + "'");
    }
    Hop hop{std::string(text.substr(0, colon)), std::string(text.substr(colon + 1, arrow - colon - 1)),
            std::string(text.substr(arrow + 2))};
    if (hop.sequence.empty() || hop.from.empty() || hop.to.empty()) {
        throw std::invalid_argument("hop has an empty field: '" + std::string(text) + "'");
    }
    return hop;
}

void Transcript::announce(std::string speaker, std::string kind, std::string context,
                          std::vector<std::int64_t> values) {
    events_.push_back({std::move(speaker), std::move(kind), std::move(context), std::move(values)});
    if (listener_) listener_(events_.back());
}

}  // namespace qss
