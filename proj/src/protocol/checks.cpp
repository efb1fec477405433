#include "qss/protocol/checks.hpp"

#include <algorithm>
#include <stdexcept>

namespace qss {

std::vector<std::size_t> draw_positions(Stream& rng, std::span<const std::size_t> candidates, std::size_t count) {
    if (count > candidates.size()) throw std::invalid_argument("cannot draw more positions than available");
    std::vector<std::size_t> pool(candidates.begin(), candidates.end());
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

CheckReport check_zx(const std::string& check_id, std::span<const std::size_t> positions,
                     std::span<const Pauli> frames, CheckSide remote, CheckSide local, Transcript& transcript,
                     double threshold) {
    if (frames.size() != positions.size()) throw std::invalid_argument(check_id + ": one frame per position required");

    std::vector<int> bases;
    std::vector<int> remote_bits;
    for (std::size_t pos : positions) {
        const Basis b = remote.party.rng.bit() ? Basis::X : Basis::Z;
        bases.push_back(static_cast<int>(b));
        remote_bits.push_back(remote.party.lab.measure(remote.sequence.photon(pos), b));
    }
    transcript.announce(remote.party.name, "bases", check_id, to_values(bases));
    transcript.announce(remote.party.name, "results", check_id, to_values(remote_bits));

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Basis b = static_cast<Basis>(bases[i]);
        const int local_bit = local.party.lab.measure(local.sequence.photon(positions[i]), b);
        const bool agree = local_bit == remote_bits[i];
        if (agree != outcomes_agree(bell_of(frames[i]), b)) ++mismatches;
    }
    auto report = CheckReport::make(check_id, positions.size(), mismatches, threshold);
    transcript.announce(local.party.name, "verdict", check_id,
                        {report.passed ? 1 : 0, static_cast<std::int64_t>(positions.size()),
                         static_cast<std::int64_t>(mismatches)});
    return report;
}

CheckReport verify_step6(const std::string& check_id, std::span<const std::size_t> positions,
                         std::span<const Pauli> announced, Participant& dealer, const PhotonSequence& dealer_half,
                         const PhotonSequence& returned, Transcript& transcript, double threshold) {
    if (announced.size() != positions.size()) {
        throw std::invalid_argument(check_id + ": missing announcements for sampled positions");
    }
    std::size_t mismatches = 0;
    std::vector<int> outcomes;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const PhotonId back = returned.photon(positions[i]);
        dealer.lab.apply(back, Gate::H);
        const BellLabel outcome = dealer.lab.measure_bell(dealer_half.photon(positions[i]), back);
        outcomes.push_back(static_cast<int>(outcome));
        if (!(decode_bell_to_pauli(outcome) == announced[i])) ++mismatches;
    }
    transcript.announce(dealer.name, "bell_outcomes", check_id, to_values(outcomes));
    auto report = CheckReport::make(check_id, positions.size(), mismatches, threshold);
    transcript.announce(dealer.name, "verdict", check_id,
                        {report.passed ? 1 : 0, static_cast<std::int64_t>(positions.size()),
                         static_cast<std::int64_t>(mismatches)});
    return report;
}

CheckReport decoy_round(const std::string& check_id, std::span<const CheckingPhoton> decoys,
                        std::span<const PhotonId> received, const Participant& dealer, Participant& receiver,
                        Transcript& transcript, double threshold) {
    std::vector<std::int64_t> slots;
    std::vector<std::int64_t> bases;
    for (const auto& d : decoys) {
        slots.push_back(static_cast<std::int64_t>(d.slot));
        bases.push_back(static_cast<std::int64_t>(basis_of(d.state)));
    }
    transcript.announce(dealer.name, "decoy_positions", check_id, slots);
    transcript.announce(dealer.name, "decoy_bases", check_id, bases);

    std::vector<int> results;
    for (const auto& d : decoys) {
        if (d.slot >= received.size()) throw std::out_of_range(check_id + ": decoy slot outside the sequence");
        results.push_back(receiver.lab.measure(received[d.slot], basis_of(d.state)));
    }
    transcript.announce(receiver.name, "decoy_results", check_id, to_values(results));

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < decoys.size(); ++i) {
        if (results[i] != bit_of(decoys[i].state)) ++mismatches;
    }
    auto report = CheckReport::make(check_id, decoys.size(), mismatches, threshold);
    transcript.announce(dealer.name, "verdict", check_id,
                        {report.passed ? 1 : 0, static_cast<std::int64_t>(decoys.size()),
                         static_cast<std::int64_t>(mismatches)});
    return report;
}

}  // namespace qss
