#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qss/types.hpp"

namespace qss {

enum class Role : std::uint8_t {
    Unassigned,
    Message,
    ZxSample,
    HDecoy,
    CheckingPhoton,
    DealerSample,  // dealer-chosen final sample carrying a random Pauli
};

std::string_view to_string(Role role);

/// Ordered photon sequence with one role per position. A role is assigned at
/// most once; positions never change role afterwards.
class PhotonSequence {
  public:
    explicit PhotonSequence(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    std::size_t size() const { return slots_.size(); }

    void push_back(PhotonId photon, Role role = Role::Unassigned) { slots_.push_back({photon, role}); }

    PhotonId photon(std::size_t position) const { return slots_.at(position).photon; }
    Role role(std::size_t position) const { return slots_.at(position).role; }

    /// Records the photon now standing at `position` (after a transmission).
    void replace(std::size_t position, PhotonId photon) { slots_.at(position).photon = photon; }

    /// Throws std::logic_error if the position already has a role.
    void assign(std::size_t position, Role role);

    std::vector<std::size_t> positions_with(Role role) const;
    std::vector<std::size_t> unassigned() const { return positions_with(Role::Unassigned); }
    std::vector<PhotonId> photons_at(const std::vector<std::size_t>& positions) const;

  private:
    struct Slot {
        PhotonId photon;
        Role role;
    };
    std::string name_;
    std::vector<Slot> slots_;
};

}  // namespace qss
