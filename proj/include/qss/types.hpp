#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qss {

/// Identifier of a simulated photon. Unique within a register and never reused.
struct PhotonId {
    std::uint64_t index = 0;

    friend constexpr bool operator==(PhotonId, PhotonId) = default;
    friend constexpr auto operator<=>(PhotonId, PhotonId) = default;
};

/// The four Bell states, with the convention
///   Φ± = (|00⟩ ± |11⟩)/√2,  Ψ± = (|01⟩ ± |10⟩)/√2
/// where the first ket belongs to the first photon of the pair.
enum class BellLabel : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

enum class Basis : std::uint8_t { Z = 0, X = 1 };

/// Single-photon gates. `iY` is iσ_y = [[0, 1], [-1, 0]].
enum class Gate : std::uint8_t { I, X, iY, Z, H };

/// Pure single-photon states used for preparation.
enum class SingleState : std::uint8_t { Zero, One, Plus, Minus };

inline constexpr BellLabel kAllBellLabels[] = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                               BellLabel::PsiPlus, BellLabel::PsiMinus};
inline constexpr SingleState kAllSingleStates[] = {SingleState::Zero, SingleState::One,
                                                   SingleState::Plus, SingleState::Minus};

constexpr Basis basis_of(SingleState s) {
    return (s == SingleState::Zero || s == SingleState::One) ? Basis::Z : Basis::X;
}

/// Eigenvalue bit of a state in its own basis (|0⟩,|+⟩ → 0; |1⟩,|−⟩ → 1).
constexpr int bit_of(SingleState s) {
    return (s == SingleState::One || s == SingleState::Minus) ? 1 : 0;
}

constexpr SingleState eigenstate(Basis b, int bit) {
    if (b == Basis::Z) return bit ? SingleState::One : SingleState::Zero;
    return bit ? SingleState::Minus : SingleState::Plus;
}

std::string_view to_string(BellLabel label);
std::string_view to_string(Basis basis);
std::string_view to_string(Gate gate);
std::string_view to_string(SingleState state);

BellLabel parse_bell_label(std::string_view text);

/// Raised when an operation references a photon that was already measured
/// (or never existed).
class ConsumedPhotonError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Raised when a register would exceed its live-photon or group capacity.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

}  // namespace qss
