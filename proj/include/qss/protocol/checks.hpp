#pragma once

#include <span>
#include <string>
#include <vector>

#include "qss/pauli.hpp"
#include "qss/protocol/channel.hpp"
#include "qss/protocol/lab.hpp"
#include "qss/protocol/report.hpp"
#include "qss/protocol/sequence.hpp"

namespace qss {

/// Draws `count` distinct entries of `candidates` uniformly; result ascending.
std::vector<std::size_t> draw_positions(Stream& rng, std::span<const std::size_t> candidates, std::size_t count);

/// One side of a pair check: the party and the sequence it holds.
struct CheckSide {
    Participant& party;
    const PhotonSequence& sequence;
};

/// Z/X correlation check on pair positions. The remote side picks a uniformly
/// random basis per position, measures and announces basis and result; the
/// local side measures its partner in the same basis. `frames[i]` is the
/// announced Pauli offset of pair i relative to ψ−, which fixes whether the
/// two outcomes should agree. Sampled photons are consumed.
CheckReport check_zx(const std::string& check_id, std::span<const std::size_t> positions,
                     std::span<const Pauli> frames, CheckSide remote, CheckSide local, Transcript& transcript,
                     double threshold);

/// Dealer-side verification of returned H-decoys: undo H on the returned
/// photon, Bell-measure it with the dealer's partner and compare the decoded
/// Pauli with the XOR of the Paulis the earlier agents announced.
CheckReport verify_step6(const std::string& check_id, std::span<const std::size_t> positions,
                         std::span<const Pauli> announced, Participant& dealer, const PhotonSequence& dealer_half,
                         const PhotonSequence& returned, Transcript& transcript, double threshold);

struct CheckingPhoton {
    std::size_t slot;  // index in the transmitted sequence
    SingleState state;
};

/// Checking-photon verification after a transmission: the dealer announces
/// slots and preparation bases, the receiver measures those slots in the
/// announced bases and publishes the results.
CheckReport decoy_round(const std::string& check_id, std::span<const CheckingPhoton> decoys,
                        std::span<const PhotonId> received, const Participant& dealer, Participant& receiver,
                        Transcript& transcript, double threshold);

}  // namespace qss
