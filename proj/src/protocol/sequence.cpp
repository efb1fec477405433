#include "qss/protocol/sequence.hpp"

#include <stdexcept>

namespace qss {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::Unassigned: return "UNASSIGNED";
        case Role::Message: return "MESSAGE";
        case Role::ZxSample: return "ZX_SAMPLE";
        case Role::HDecoy: return "H_DECOY";
        case Role::CheckingPhoton: return "CHECKING_PHOTON";
        case Role::DealerSample: return "DEALER_SAMPLE";
    }
    return "?";
}

void PhotonSequence::assign(std::size_t position, Role role) {
    auto& slot = slots_.at(position);
    if (slot.role != Role::Unassigned) {
        throw std::logic_error(name_ + "[" + std::to_string(position) + "] already has role " +
                               std::string(to_string(slot.role)));
    }
    slot.role = role;
}

std::vector<std::size_t> PhotonSequence::positions_with(Role role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (slots_[i].role == role) out.push_back(i);
    }
    return out;
}

std::vector<PhotonId> PhotonSequence::photons_at(const std::vector<std::size_t>& positions) const {
    std::vector<PhotonId> out;
    out.reserve(positions.size());
    for (auto p : positions) out.push_back(photon(p));
    return out;
}

}  // namespace qss
