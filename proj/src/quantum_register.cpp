#include "qss/quantum_register.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qss {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
// Outcome probabilities below this are rounding residue of an exact zero.
constexpr double kNegligible = 1e-20;

// Inserts zero bits at positions lo < hi into `rest`.
std::size_t insert_two_zero_bits(std::size_t rest, std::size_t lo, std::size_t hi) {
    const std::size_t low_mask = (std::size_t{1} << lo) - 1;
    std::size_t v = (rest & low_mask) | ((rest & ~low_mask) << 1);
    const std::size_t high_mask = (std::size_t{1} << hi) - 1;
    return (v & high_mask) | ((v & ~high_mask) << 1);
}

// Bell-state coefficients c[a + 2b] for photon bits a (first) and b (second).
std::array<double, 4> bell_coefficients(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return {kInvSqrt2, 0, 0, kInvSqrt2};
        case BellLabel::PhiMinus: return {kInvSqrt2, 0, 0, -kInvSqrt2};
        case BellLabel::PsiPlus: return {0, kInvSqrt2, kInvSqrt2, 0};
        case BellLabel::PsiMinus: return {0, -kInvSqrt2, kInvSqrt2, 0};  // |01⟩ − |10⟩
    }
    throw std::invalid_argument("unknown Bell label");
}

}  // namespace

std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "PHI_PLUS";
        case BellLabel::PhiMinus: return "PHI_MINUS";
        case BellLabel::PsiPlus: return "PSI_PLUS";
        case BellLabel::PsiMinus: return "PSI_MINUS";
    }
    return "?";
}

std::string_view to_string(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

std::string_view to_string(Gate gate) {
    switch (gate) {
        case Gate::I: return "I";
        case Gate::X: return "X";
        case Gate::iY: return "iY";
        case Gate::Z: return "Z";
        case Gate::H: return "H";
    }
    return "?";
}

std::string_view to_string(SingleState state) {
    switch (state) {
        case SingleState::Zero: return "|0>";
        case SingleState::One: return "|1>";
        case SingleState::Plus: return "|+>";
        case SingleState::Minus: return "|->";
    }
    return "?";
}

BellLabel parse_bell_label(std::string_view text) {
    for (BellLabel label : kAllBellLabels) {
        if (to_string(label) == text) return label;
    }
    throw std::invalid_argument("unknown Bell label: " + std::string(text));
}

QuantumRegister::QuantumRegister(std::uint64_t master_seed, std::uint64_t register_id, std::size_t capacity)
    : rng_(master_seed, register_id), capacity_(capacity) {
    if (capacity_ < 2) throw std::invalid_argument("register capacity must allow at least one pair");
}

PhotonId QuantumRegister::issue() { return PhotonId{next_photon_++}; }

void QuantumRegister::reserve_photons(std::size_t count) const {
    if (live_count() + count > capacity_) {
        throw CapacityError("register capacity exceeded: " + std::to_string(live_count()) + " live + " +
                            std::to_string(count) + " > " + std::to_string(capacity_));
    }
}

std::uint64_t QuantumRegister::group_key(PhotonId photon) const {
    auto it = group_of_.find(photon.index);
    if (it == group_of_.end()) {
        throw ConsumedPhotonError("photon " + std::to_string(photon.index) + " is not live");
    }
    return it->second;
}

std::uint64_t QuantumRegister::add_group(Group group) {
    const std::uint64_t key = next_group_++;
    for (PhotonId p : group.photons) group_of_[p.index] = key;
    groups_.emplace(key, std::move(group));
    return key;
}

std::size_t QuantumRegister::bit_position(const Group& group, PhotonId photon) {
    auto it = std::find(group.photons.begin(), group.photons.end(), photon);
    return static_cast<std::size_t>(it - group.photons.begin());
}

std::pair<PhotonId, PhotonId> QuantumRegister::prepare_bell(BellLabel label) {
    reserve_photons(2);
    Group g;
    g.photons = {issue(), issue()};
    const auto c = bell_coefficients(label);
    g.amps.assign(c.begin(), c.end());
    const auto a = g.photons[0];
    const auto b = g.photons[1];
    add_group(std::move(g));
    return {a, b};
}

PhotonId QuantumRegister::prepare_single(SingleState state) {
    reserve_photons(1);
    Group g;
    g.photons = {issue()};
    switch (state) {
        case SingleState::Zero: g.amps = {1.0, 0.0}; break;
        case SingleState::One: g.amps = {0.0, 1.0}; break;
        case SingleState::Plus: g.amps = {kInvSqrt2, kInvSqrt2}; break;
        case SingleState::Minus: g.amps = {kInvSqrt2, -kInvSqrt2}; break;
    }
    const auto id = g.photons[0];
    add_group(std::move(g));
    return id;
}

void QuantumRegister::apply_matrix(Group& group, std::size_t bit, const Amplitude (&m)[2][2]) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t i = 0; i < group.amps.size(); ++i) {
        if (i & stride) continue;
        const Amplitude a0 = group.amps[i];
        const Amplitude a1 = group.amps[i | stride];
        group.amps[i] = m[0][0] * a0 + m[0][1] * a1;
        group.amps[i | stride] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void QuantumRegister::apply_gate(PhotonId photon, Gate gate) {
    Group& g = groups_.at(group_key(photon));
    const std::size_t bit = bit_position(g, photon);
    switch (gate) {
        case Gate::I: return;
        case Gate::X: {
            static constexpr Amplitude m[2][2] = {{0, 1}, {1, 0}};
            apply_matrix(g, bit, m);
            return;
        }
        case Gate::iY: {
            static constexpr Amplitude m[2][2] = {{0, 1}, {-1, 0}};
            apply_matrix(g, bit, m);
            return;
        }
        case Gate::Z: {
            static constexpr Amplitude m[2][2] = {{1, 0}, {0, -1}};
            apply_matrix(g, bit, m);
            return;
        }
        case Gate::H: {
            static constexpr Amplitude m[2][2] = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
            apply_matrix(g, bit, m);
            return;
        }
    }
}

int QuantumRegister::measure_single(PhotonId photon, Basis basis) {
    const std::uint64_t key = group_key(photon);
    if (basis == Basis::X) apply_gate(photon, Gate::H);
    Group& g = groups_.at(key);
    const std::size_t bit = bit_position(g, photon);
    const std::size_t stride = std::size_t{1} << bit;

    double p0 = 0.0;
    double p1 = 0.0;
    for (std::size_t i = 0; i < g.amps.size(); ++i) {
        (i & stride ? p1 : p0) += std::norm(g.amps[i]);
    }
    if (p0 < kNegligible) p0 = 0.0;
    if (p1 < kNegligible) p1 = 0.0;
    const int outcome = rng_.uniform() * (p0 + p1) < p0 ? 0 : 1;
    const double scale = 1.0 / std::sqrt(outcome ? p1 : p0);

    std::vector<Amplitude> rest(g.amps.size() / 2);
    const std::size_t low_mask = stride - 1;
    for (std::size_t r = 0; r < rest.size(); ++r) {
        const std::size_t full = (r & low_mask) | ((r & ~low_mask) << 1) | (outcome ? stride : 0);
        rest[r] = g.amps[full] * scale;
    }
    g.photons.erase(g.photons.begin() + static_cast<std::ptrdiff_t>(bit));
    g.amps = std::move(rest);
    group_of_.erase(photon.index);
    if (g.photons.empty()) groups_.erase(key);
    return outcome;
}

std::uint64_t QuantumRegister::merge(std::uint64_t left, std::uint64_t right) {
    Group& l = groups_.at(left);
    Group& r = groups_.at(right);
    if (l.photons.size() + r.photons.size() > kMaxGroupPhotons) {
        throw CapacityError("entangled group would exceed " + std::to_string(kMaxGroupPhotons) + " photons");
    }
    Group joined;
    joined.photons = l.photons;
    joined.photons.insert(joined.photons.end(), r.photons.begin(), r.photons.end());
    joined.amps.resize(l.amps.size() * r.amps.size());
    const std::size_t shift = l.photons.size();
    for (std::size_t j = 0; j < r.amps.size(); ++j) {
        for (std::size_t i = 0; i < l.amps.size(); ++i) {
            joined.amps[i | (j << shift)] = l.amps[i] * r.amps[j];
        }
    }
    groups_.erase(left);
    groups_.erase(right);
    return add_group(std::move(joined));
}

BellLabel QuantumRegister::measure_bell(PhotonId a, PhotonId b) {
    if (a == b) throw std::invalid_argument("Bell measurement needs two distinct photons");
    std::uint64_t key = group_key(a);
    const std::uint64_t key_b = group_key(b);
    if (key != key_b) key = merge(key, key_b);

    Group& g = groups_.at(key);
    const std::size_t bit_a = bit_position(g, a);
    const std::size_t bit_b = bit_position(g, b);
    const std::size_t lo = std::min(bit_a, bit_b);
    const std::size_t hi = std::max(bit_a, bit_b);
    const std::size_t rest_size = g.amps.size() / 4;

    // Project onto each Bell state; the projections are computed in label order
    // and sampled from one uniform draw.
    std::array<std::vector<Amplitude>, 4> projected;
    std::array<double, 4> prob{};
    for (std::size_t l = 0; l < 4; ++l) {
        const auto c = bell_coefficients(kAllBellLabels[l]);
        auto& out = projected[l];
        out.assign(rest_size, 0.0);
        for (std::size_t r = 0; r < rest_size; ++r) {
            const std::size_t base = insert_two_zero_bits(r, lo, hi);
            Amplitude acc = 0.0;
            for (std::size_t ab = 0; ab < 4; ++ab) {
                if (c[ab] == 0.0) continue;
                std::size_t idx = base;
                if (ab & 1) idx |= std::size_t{1} << bit_a;
                if (ab & 2) idx |= std::size_t{1} << bit_b;
                acc += c[ab] * g.amps[idx];
            }
            out[r] = acc;
            prob[l] += std::norm(acc);
        }
    }
    for (auto& p : prob) {
        if (p < kNegligible) p = 0.0;
    }
    const double total = prob[0] + prob[1] + prob[2] + prob[3];
    const double u = rng_.uniform() * total;
    std::size_t chosen = 3;
    double cumulative = 0.0;
    for (std::size_t l = 0; l < 4; ++l) {
        cumulative += prob[l];
        if (u < cumulative) {
            chosen = l;
            break;
        }
    }
    while (prob[chosen] == 0.0) --chosen;  // guard against rounding at the top edge

    const double scale = 1.0 / std::sqrt(prob[chosen]);
    for (auto& amp : projected[chosen]) amp *= scale;

    g.photons.erase(g.photons.begin() + static_cast<std::ptrdiff_t>(hi));
    g.photons.erase(g.photons.begin() + static_cast<std::ptrdiff_t>(lo));
    g.amps = std::move(projected[chosen]);
    group_of_.erase(a.index);
    group_of_.erase(b.index);
    if (g.photons.empty()) groups_.erase(key);
    return kAllBellLabels[chosen];
}

double QuantumRegister::max_norm_error() const {
    double worst = 0.0;
    for (const auto& [key, g] : groups_) {
        double n = 0.0;
        for (const auto& amp : g.amps) n += std::norm(amp);
        worst = std::max(worst, std::abs(n - 1.0));
    }
    return worst;
}

std::size_t QuantumRegister::group_size(PhotonId photon) const {
    return groups_.at(group_key(photon)).photons.size();
}

std::vector<Amplitude> QuantumRegister::state_of(std::span<const PhotonId> photons) const {
    std::vector<std::uint64_t> keys;
    for (PhotonId p : photons) {
        const auto key = group_key(p);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    // Tensor the covered groups together, then permute bits into list order.
    std::vector<PhotonId> order;
    std::vector<Amplitude> amps{1.0};
    for (auto key : keys) {
        const Group& g = groups_.at(key);
        std::vector<Amplitude> next(amps.size() * g.amps.size());
        for (std::size_t j = 0; j < g.amps.size(); ++j) {
            for (std::size_t i = 0; i < amps.size(); ++i) next[i | (j << order.size())] = amps[i] * g.amps[j];
        }
        amps = std::move(next);
        order.insert(order.end(), g.photons.begin(), g.photons.end());
    }
    if (order.size() != photons.size()) {
        throw std::invalid_argument("state_of: photons are entangled with photons outside the list");
    }
    std::vector<std::size_t> target(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        target[k] = static_cast<std::size_t>(std::find(photons.begin(), photons.end(), order[k]) - photons.begin());
        if (target[k] == photons.size()) throw std::invalid_argument("state_of: duplicate photon in list");
    }
    std::vector<Amplitude> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (i & (std::size_t{1} << k)) j |= std::size_t{1} << target[k];
        }
        out[j] = amps[i];
    }
    return out;
}

}  // namespace qss
