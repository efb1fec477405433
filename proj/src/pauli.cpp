#include "qss/pauli.hpp"

#include <stdexcept>
#include <string>

namespace qss {

Gate Pauli::gate() const {
    switch (bits_) {
        case 0: return Gate::I;
        case 2: return Gate::X;
        case 1: return Gate::Z;
        default: return Gate::iY;
    }
}

std::string_view to_string(Pauli p) { return to_string(p.gate()); }

std::vector<Pauli> encode_message(std::span<const std::uint8_t> bits) {
    std::vector<Pauli> ops;
    ops.reserve(bits.size());
    for (std::uint8_t symbol : bits) {
        if (symbol > 3) throw std::invalid_argument("message symbol out of range: " + std::to_string(symbol));
        ops.push_back(Pauli::from_symbol(symbol));
    }
    return ops;
}

MessageBits decode_message(std::span<const Pauli> ops) {
    MessageBits bits;
    bits.reserve(ops.size());
    for (Pauli p : ops) bits.push_back(p.symbol());
    return bits;
}

Pauli recover_dealer_pauli(Pauli total, std::span<const Pauli> agent_ops) {
    for (Pauli p : agent_ops) total = compose(total, p);
    return total;
}

}  // namespace qss
