#include "qss/protocol/lab.hpp"

namespace qss {

void Lab::require(PhotonId photon) const {
    if (!holds(photon)) {
        throw AccessViolation(owner_ + " does not hold photon " + std::to_string(photon.index));
    }
}

std::pair<PhotonId, PhotonId> Lab::prepare_bell(BellLabel label) {
    auto pair = reg_->prepare_bell(label);
    held_.insert(pair.first.index);
    held_.insert(pair.second.index);
    return pair;
}

PhotonId Lab::prepare_single(SingleState state) {
    const PhotonId p = reg_->prepare_single(state);
    held_.insert(p.index);
    return p;
}

void Lab::apply(PhotonId photon, Gate gate) {
    require(photon);
    reg_->apply_gate(photon, gate);
}

int Lab::measure(PhotonId photon, Basis basis) {
    require(photon);
    const int bit = reg_->measure_single(photon, basis);
    held_.erase(photon.index);
    return bit;
}

BellLabel Lab::measure_bell(PhotonId a, PhotonId b) {
    require(a);
    require(b);
    const BellLabel label = reg_->measure_bell(a, b);
    held_.erase(a.index);
    held_.erase(b.index);
    return label;
}

void Lab::give(PhotonId photon, Lab& to) {
    require(photon);
    if (&to == this) return;
    held_.erase(photon.index);
    to.held_.insert(photon.index);
}

}  // namespace qss
