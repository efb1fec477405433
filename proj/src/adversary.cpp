#include "qss/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace qss {

std::string_view to_string(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::None: return "none";
        case AdversaryKind::EveInterceptResend: return "eve_intercept_resend";
        case AdversaryKind::BobSwapAttack: return "bob_swap_attack";
    }
    return "?";
}

std::string_view to_string(EvePolicy policy) {
    switch (policy) {
        case EvePolicy::FixedZ: return "fixed-Z";
        case EvePolicy::FixedX: return "fixed-X";
        case EvePolicy::UniformRandom: return "uniform-random";
    }
    return "?";
}

AdversaryKind parse_adversary_kind(std::string_view text) {
    for (auto k : {AdversaryKind::None, AdversaryKind::EveInterceptResend, AdversaryKind::BobSwapAttack}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown adversary kind '" + std::string(text) + "'");
}

EvePolicy parse_eve_policy(std::string_view text) {
    for (auto p : {EvePolicy::FixedZ, EvePolicy::FixedX, EvePolicy::UniformRandom}) {
        if (to_string(p) == text) return p;
    }
    throw std::invalid_argument("unknown Eve basis policy '" + std::string(text) + "'");
}

std::vector<PhotonId> Adversary::forward(const ForwardRequest&, Lab&, const Transcript&) {
    throw std::logic_error(std::string(name()) + " does not act as an agent");
}

std::vector<Pauli> Adversary::announce(const AnnouncementRequest&, Lab&, const Transcript&) {
    throw std::logic_error(std::string(name()) + " does not act as an agent");
}

// --- Eve --------------------------------------------------------------------

void EveInterceptResend::on_transit(const Hop&, std::vector<PhotonId>& photons, Lab& lab, const Transcript&) {
    intercept_resend(photons, lab);
}

void EveInterceptResend::intercept_resend(std::vector<PhotonId>& photons, Lab& lab) {
    for (std::size_t slot = 0; slot < photons.size(); ++slot) {
        Basis basis = Basis::Z;
        switch (policy_) {
            case EvePolicy::FixedZ: basis = Basis::Z; break;
            case EvePolicy::FixedX: basis = Basis::X; break;
            case EvePolicy::UniformRandom: basis = rng_.bit() ? Basis::X : Basis::Z; break;
        }
        const int bit = lab.measure(photons[slot], basis);
        log_.push_back({slot, basis, bit});
        photons[slot] = lab.prepare_single(eigenstate(basis, bit));
    }
}

// --- Bob's swap attack ------------------------------------------------------

BobSwapAttack::FakePair& BobSwapAttack::fake_at(std::size_t position) {
    auto it = fakes_.find(position);
    if (it == fakes_.end()) {
        throw std::invalid_argument("position " + std::to_string(position) + " was not forwarded by the attacker");
    }
    return it->second;
}

void BobSwapAttack::on_event(const Event& event) {
    if (event.kind == "sample_positions") {
        for (auto v : event.values) announced_samples_.insert(static_cast<std::size_t>(v));
    }
}

std::vector<PhotonId> BobSwapAttack::forward(const ForwardRequest& request, Lab& lab, const Transcript&) {
    return on_send_to_third_party(request, lab);
}

std::vector<PhotonId> BobSwapAttack::on_send_to_third_party(const ForwardRequest& request, Lab& lab) {
    std::vector<PhotonId> out;
    out.reserve(request.positions.size());
    for (std::size_t j = 0; j < request.positions.size(); ++j) {
        const std::size_t pos = request.positions[j];
        if (std::binary_search(request.own_samples.begin(), request.own_samples.end(), pos)) {
            lab.apply(request.photons[j], Gate::H);
            out.push_back(request.photons[j]);
            continue;
        }
        auto [kept, sent] = lab.prepare_bell(BellLabel::PsiMinus);
        const Pauli cover = Pauli::from_symbol(static_cast<std::uint8_t>(rng_.below(4)));
        lab.apply(sent, cover);
        fakes_[pos] = FakePair{request.photons[j], kept, sent, cover};
        out.push_back(sent);
    }
    return out;
}

std::vector<Pauli> BobSwapAttack::on_check_positions_announced(std::span<const std::size_t> positions, Lab& lab) {
    std::vector<Pauli> announced;
    announced.reserve(positions.size());
    for (std::size_t pos : positions) {
        FakePair& f = fake_at(pos);
        const BellLabel outcome = lab.measure_bell(f.genuine, f.kept_fake);
        f.swapped = true;
        announced.push_back(compose(decode_bell_to_pauli(outcome), f.cover));
    }
    return announced;
}

std::vector<Pauli> BobSwapAttack::announce(const AnnouncementRequest& request, Lab& lab, const Transcript&) {
    if (request.kind == AnnouncementKind::ZxCheck) return on_check_positions_announced(request.positions, lab);
    std::vector<Pauli> out;
    out.reserve(request.positions.size());
    for (std::size_t pos : request.positions) {
        const Pauli cover = fake_at(pos).cover;
        if (request.kind == AnnouncementKind::Collaboration && falsify_) {
            out.push_back(Pauli::from_symbol(static_cast<std::uint8_t>(rng_.below(4))));
        } else {
            out.push_back(cover);
        }
    }
    return out;
}

std::vector<std::size_t> BobSwapAttack::live_positions() const {
    std::vector<std::size_t> out;
    for (const auto& [pos, f] : fakes_) {
        if (!f.swapped && !f.read && !announced_samples_.contains(pos)) out.push_back(pos);
    }
    return out;
}

void BobSwapAttack::on_transit(const Hop&, std::vector<PhotonId>& photons, Lab& lab, const Transcript&) {
    on_intercept_dealer_sequence(photons, lab);
}

void BobSwapAttack::on_intercept_dealer_sequence(std::vector<PhotonId>& photons, Lab& lab) {
    // The j-th photon is assumed to belong to the j-th surviving position; any
    // unannounced extra photons in the sequence break that alignment.
    const auto positions = live_positions();
    const std::size_t n = std::min(positions.size(), photons.size());
    for (std::size_t j = 0; j < n; ++j) {
        FakePair& f = fakes_.at(positions[j]);
        const Pauli dealer = decode_bell_to_pauli(lab.measure_bell(photons[j], f.genuine));
        f.read = true;
        inferred_[positions[j]] = dealer;
        lab.apply(f.kept_fake, dealer);
        photons[j] = f.kept_fake;
    }
}

}  // namespace qss
