#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qss/pauli.hpp"
#include "qss/protocol/channel.hpp"
#include "qss/protocol/lab.hpp"
#include "qss/stream.hpp"

namespace qss {

enum class AdversaryKind { None, EveInterceptResend, BobSwapAttack };
enum class EvePolicy { FixedZ, FixedX, UniformRandom };

std::string_view to_string(AdversaryKind kind);
std::string_view to_string(EvePolicy policy);
AdversaryKind parse_adversary_kind(std::string_view text);
EvePolicy parse_eve_policy(std::string_view text);

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::None;
    /// Hop Eve attaches to. The swap attack always acts as agent0.
    std::optional<Hop> hop;
    EvePolicy eve_policy = EvePolicy::UniformRandom;
    /// Swap attack only: announce random Paulis instead of the true cover
    /// Paulis when the agents collaborate to decode.
    bool falsify_collaboration = false;
};

/// What an agent is asked to publish, and why.
enum class AnnouncementKind { ZxCheck, HDecoyCheck, DealerSampleCheck, Collaboration };

struct AnnouncementRequest {
    std::string context;
    AnnouncementKind kind;
    std::vector<std::size_t> positions;
};

/// An agent's outgoing transmission of its part of the pair sequence.
struct ForwardRequest {
    Hop hop;
    std::vector<std::size_t> positions;    // ascending
    std::vector<PhotonId> photons;         // photons[j] stands at positions[j]
    std::vector<std::size_t> own_samples;  // positions the agent marked as its H-decoys
};

/// Channel-side attacker. The protocol engine calls it at three seams:
/// photons in transit on a hop it intercepts, every public announcement, and
/// (when it impersonates an agent) the agent's sending and announcing turns.
/// It only ever receives the photons in its own lab and the public transcript.
class Adversary {
  public:
    virtual ~Adversary() = default;

    virtual std::string_view name() const = 0;

    virtual bool intercepts(const Hop& /*hop*/) const { return false; }
    /// May measure, replace or rotate `photons`; must keep their count.
    virtual void on_transit(const Hop& /*hop*/, std::vector<PhotonId>& /*photons*/, Lab& /*lab*/,
                            const Transcript& /*transcript*/) {}

    virtual void on_event(const Event& /*event*/) {}

    virtual std::optional<std::size_t> impersonated_agent() const { return std::nullopt; }
    virtual std::vector<PhotonId> forward(const ForwardRequest& request, Lab& lab, const Transcript& transcript);
    virtual std::vector<Pauli> announce(const AnnouncementRequest& request, Lab& lab, const Transcript& transcript);

    /// Dealer Paulis the adversary believes were applied, by pair position.
    virtual std::map<std::size_t, Pauli> inferred_paulis() const { return {}; }
};

class NoAdversary final : public Adversary {
  public:
    std::string_view name() const override { return "none"; }
};

/// Measures every photon on one hop and resends the observed eigenstate.
class EveInterceptResend final : public Adversary {
  public:
    struct Observation {
        std::size_t slot;
        Basis basis;
        int bit;
    };

    EveInterceptResend(Hop hop, EvePolicy policy, Stream rng) : hop_(std::move(hop)), policy_(policy), rng_(rng) {}

    std::string_view name() const override { return "eve_intercept_resend"; }
    bool intercepts(const Hop& hop) const override { return hop == hop_; }
    void on_transit(const Hop& hop, std::vector<PhotonId>& photons, Lab& lab, const Transcript& transcript) override;

    /// Measures and replaces each photon in place.
    void intercept_resend(std::vector<PhotonId>& photons, Lab& lab);

    const std::vector<Observation>& observations() const { return log_; }

  private:
    Hop hop_;
    EvePolicy policy_;
    Stream rng_;
    std::vector<Observation> log_;
};

/// The dishonest first agent's entanglement-swapping attack.
///
/// Instead of forwarding its half of the dealer's pairs it forwards halves of
/// fresh ψ− pairs carrying cover Paulis, keeps the genuine halves, and:
///  * at Z/X checks where it must publish Paulis, swaps the genuine half with
///    its fake partner and publishes the Pauli that makes the check pass;
///  * when the dealer's encoded sequence passes by, Bell-measures it against
///    the genuine halves to read the dealer's Paulis, re-applies them to the
///    fake partners and forwards those instead.
/// H-decoy checks are not recognised: there it publishes its cover Paulis
/// without swapping. Its own H-decoys are forwarded untouched (after H).
class BobSwapAttack final : public Adversary {
  public:
    struct FakePair {
        PhotonId genuine;    // kept half of the dealer's pair
        PhotonId kept_fake;  // A′
        PhotonId forwarded;  // C′
        Pauli cover;         // U_B′ applied to C′
        bool swapped = false;
        bool read = false;  // consumed reading the dealer's Pauli
    };

    /// `dealer_hop` is the transmission of the dealer's encoded sequence.
    BobSwapAttack(Hop dealer_hop, bool falsify_collaboration, Stream rng)
        : dealer_hop_(std::move(dealer_hop)), falsify_(falsify_collaboration), rng_(rng) {}

    std::string_view name() const override { return "bob_swap_attack"; }

    bool intercepts(const Hop& hop) const override { return hop == dealer_hop_; }
    void on_transit(const Hop& hop, std::vector<PhotonId>& photons, Lab& lab, const Transcript& transcript) override;
    void on_event(const Event& event) override;
    std::optional<std::size_t> impersonated_agent() const override { return 0; }
    std::vector<PhotonId> forward(const ForwardRequest& request, Lab& lab, const Transcript& transcript) override;
    std::vector<Pauli> announce(const AnnouncementRequest& request, Lab& lab, const Transcript& transcript) override;
    std::map<std::size_t, Pauli> inferred_paulis() const override { return inferred_; }

    std::vector<PhotonId> on_send_to_third_party(const ForwardRequest& request, Lab& lab);
    std::vector<Pauli> on_check_positions_announced(std::span<const std::size_t> positions, Lab& lab);
    void on_intercept_dealer_sequence(std::vector<PhotonId>& photons, Lab& lab);

    const std::map<std::size_t, FakePair>& fake_pairs() const { return fakes_; }
    /// Positions believed to still travel in the dealer's sequence.
    std::vector<std::size_t> live_positions() const;

  private:
    FakePair& fake_at(std::size_t position);

    Hop dealer_hop_;
    bool falsify_;
    Stream rng_;
    std::map<std::size_t, FakePair> fakes_;
    std::set<std::size_t> announced_samples_;
    std::map<std::size_t, Pauli> inferred_;
};

}  // namespace qss
