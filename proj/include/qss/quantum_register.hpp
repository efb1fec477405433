#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qss/stream.hpp"
#include "qss/types.hpp"

namespace qss {

using Amplitude = std::complex<double>;

/// Statevector engine over a set of live photons.
///
/// The global state is kept factored into independent entangled groups; a
/// group only grows when a Bell measurement joins photons from two groups.
/// Measurements are destructive: the measured photons leave the live set and
/// any further reference to them raises ConsumedPhotonError.
///
/// A register is confined to one thread at a time.
class QuantumRegister {
  public:
    static constexpr std::size_t kDefaultCapacity = std::size_t{1} << 20;
    /// Largest entangled group that may be formed by joining groups.
    static constexpr std::size_t kMaxGroupPhotons = 16;

    explicit QuantumRegister(std::uint64_t master_seed, std::uint64_t register_id = streams::kRegister,
                             std::size_t capacity = kDefaultCapacity);

    std::pair<PhotonId, PhotonId> prepare_bell(BellLabel label);
    PhotonId prepare_single(SingleState state);

    void apply_gate(PhotonId photon, Gate gate);

    /// Destructive measurement; returns the eigenvalue bit (Z: 0/1, X: +/− as 0/1).
    int measure_single(PhotonId photon, Basis basis);

    /// Destructive Bell measurement of (a, b); `a` is the first photon in the
    /// Bell-state convention. The remaining photons keep the correct
    /// post-measurement state.
    BellLabel measure_bell(PhotonId a, PhotonId b);

    bool is_live(PhotonId photon) const { return group_of_.contains(photon.index); }
    std::size_t live_count() const { return group_of_.size(); }
    std::size_t capacity() const { return capacity_; }

    /// Largest |‖ψ‖² − 1| over all stored groups.
    double max_norm_error() const;

    /// Number of photons entangled (stored together) with `photon`, itself included.
    std::size_t group_size(PhotonId photon) const;

    /// Joint state of `photons`, with photons[j] on bit j of the index. The
    /// listed photons must together cover whole groups, otherwise their joint
    /// state is not pure and std::invalid_argument is thrown.
    std::vector<Amplitude> state_of(std::span<const PhotonId> photons) const;

  private:
    struct Group {
        std::vector<PhotonId> photons;  // photons[k] lives on bit k
        std::vector<Amplitude> amps;
    };

    PhotonId issue();
    void reserve_photons(std::size_t count) const;
    std::uint64_t group_key(PhotonId photon) const;
    std::uint64_t add_group(Group group);
    std::uint64_t merge(std::uint64_t left, std::uint64_t right);
    static std::size_t bit_position(const Group& group, PhotonId photon);
    static void apply_matrix(Group& group, std::size_t bit, const Amplitude (&m)[2][2]);

    Stream rng_;
    std::size_t capacity_;
    std::uint64_t next_photon_ = 0;
    std::uint64_t next_group_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> group_of_;
    std::unordered_map<std::uint64_t, Group> groups_;
};

}  // namespace qss
