#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qss/types.hpp"

namespace qss {

/// Phase-free single-photon Pauli, stored as (x, z) bits:
/// I = 00, X = 10, Z = 01, iY = 11. Composition is XOR, so every element is
/// its own inverse and composition commutes.
class Pauli {
  public:
    constexpr Pauli() = default;
    constexpr Pauli(bool x, bool z) : bits_(static_cast<std::uint8_t>((x ? 2 : 0) | (z ? 1 : 0))) {}

    static constexpr Pauli I() { return {false, false}; }
    static constexpr Pauli X() { return {true, false}; }
    static constexpr Pauli Z() { return {false, true}; }
    static constexpr Pauli iY() { return {true, true}; }

    /// Message symbol 0..3 written as the two bits "xz".
    static constexpr Pauli from_symbol(std::uint8_t symbol) { return {(symbol & 2) != 0, (symbol & 1) != 0}; }
    constexpr std::uint8_t symbol() const { return bits_; }

    constexpr bool x() const { return bits_ & 2; }
    constexpr bool z() const { return bits_ & 1; }

    Gate gate() const;

    friend constexpr bool operator==(Pauli, Pauli) = default;

  private:
    std::uint8_t bits_ = 0;
};

inline constexpr Pauli kAllPaulis[] = {Pauli::I(), Pauli::X(), Pauli::Z(), Pauli::iY()};

std::string_view to_string(Pauli p);

/// One message symbol per message photon, each in 0..3 ("xz" bits).
using MessageBits = std::vector<std::uint8_t>;

constexpr Pauli compose(Pauli a, Pauli b) { return Pauli::from_symbol(a.symbol() ^ b.symbol()); }

/// Pauli P with (P ⊗ I)|ψ−⟩ equal to `outcome` up to phase:
/// Ψ− → I, Ψ+ → Z, Φ− → X, Φ+ → iY.
constexpr Pauli decode_bell_to_pauli(BellLabel outcome) {
    switch (outcome) {
        case BellLabel::PsiMinus: return Pauli::I();
        case BellLabel::PsiPlus: return Pauli::Z();
        case BellLabel::PhiMinus: return Pauli::X();
        case BellLabel::PhiPlus: return Pauli::iY();
    }
    return Pauli::I();
}

/// Inverse of decode_bell_to_pauli: the label of (P ⊗ I)|ψ−⟩.
constexpr BellLabel bell_of(Pauli p) {
    if (p == Pauli::I()) return BellLabel::PsiMinus;
    if (p == Pauli::Z()) return BellLabel::PsiPlus;
    if (p == Pauli::X()) return BellLabel::PhiMinus;
    return BellLabel::PhiPlus;
}

/// Label reached by applying `p` to either photon of a pair in `label`.
constexpr BellLabel apply_to_pair(BellLabel label, Pauli p) {
    return bell_of(compose(decode_bell_to_pauli(label), p));
}

/// H P H, phase dropped: swaps the x and z bits.
constexpr Pauli conjugate_by_h(Pauli p) { return {p.z(), p.x()}; }

/// Pairs (1,2) in `initial_left` and (3,4) in `initial_right`; a Bell
/// measurement on (2,3) returning `measured` leaves (1,4) in the result.
constexpr BellLabel swap_rule(BellLabel initial_left, BellLabel initial_right, BellLabel measured) {
    return bell_of(compose(compose(decode_bell_to_pauli(initial_left), decode_bell_to_pauli(initial_right)),
                           decode_bell_to_pauli(measured)));
}

/// Whether Z- or X-basis outcomes on the two photons of `label` agree.
constexpr bool outcomes_agree(BellLabel label, Basis basis) {
    const Pauli frame = decode_bell_to_pauli(label);
    return basis == Basis::Z ? frame.x() : frame.z();
}

std::vector<Pauli> encode_message(std::span<const std::uint8_t> bits);
MessageBits decode_message(std::span<const Pauli> ops);

/// U_dealer = total ⊕ (⊕ agent ops).
Pauli recover_dealer_pauli(Pauli total, std::span<const Pauli> agent_ops);

}  // namespace qss
