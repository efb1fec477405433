#pragma once

#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "qss/pauli.hpp"
#include "qss/quantum_register.hpp"
#include "qss/stream.hpp"

namespace qss {

/// Raised when a party touches a photon it does not currently hold.
class AccessViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// One party's view of the shared register: it may only prepare, rotate,
/// measure or hand over photons that are physically in its possession.
class Lab {
  public:
    Lab(std::string owner, QuantumRegister& reg) : owner_(std::move(owner)), reg_(&reg) {}

    const std::string& owner() const { return owner_; }
    bool holds(PhotonId photon) const { return held_.contains(photon.index); }
    std::size_t held_count() const { return held_.size(); }

    std::pair<PhotonId, PhotonId> prepare_bell(BellLabel label);
    PhotonId prepare_single(SingleState state);
    void apply(PhotonId photon, Gate gate);
    void apply(PhotonId photon, Pauli pauli) { apply(photon, pauli.gate()); }
    int measure(PhotonId photon, Basis basis);
    BellLabel measure_bell(PhotonId a, PhotonId b);

    /// Moves possession of `photon` to `to`.
    void give(PhotonId photon, Lab& to);

  private:
    void require(PhotonId photon) const;

    std::string owner_;
    QuantumRegister* reg_;
    std::unordered_set<std::uint64_t> held_;
};

/// A protocol participant: name, laboratory and private random stream.
struct Participant {
    Participant(std::string name, QuantumRegister& reg, std::uint64_t master_seed, std::uint64_t stream_id)
        : name(name), lab(std::move(name), reg), rng(master_seed, stream_id) {}

    std::string name;
    Lab lab;
    Stream rng;
};

}  // namespace qss
