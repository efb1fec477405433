#include "qss/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qss::oracle {

namespace {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;

const double r = 1.0 / std::numbers::sqrt2;

Mat2 matrix(Gate g) {
    switch (g) {
        case Gate::I: return {{{1, 0}, {0, 1}}};
        case Gate::X: return {{{0, 1}, {1, 0}}};
        case Gate::iY: return {{{0, 1}, {-1, 0}}};
        case Gate::Z: return {{{1, 0}, {0, -1}}};
        case Gate::H: return {{{r, r}, {r, -r}}};
    }
    throw std::invalid_argument("gate");
}

int qubits_of(const State& psi) {
    int n = 0;
    while ((std::size_t{1} << n) < psi.size()) ++n;
    return n;
}

std::size_t mask_of(int n, int qubit) { return std::size_t{1} << (n - 1 - qubit); }

// Probability that `qubit` is found in `basis` eigenstate `bit`, and the
// renormalized state with that qubit projected (still present).
std::pair<double, State> project(const State& psi, int qubit, Basis basis, int bit) {
    const State eig = single_state(eigenstate(basis, bit));
    const int n = qubits_of(psi);
    const std::size_t m = mask_of(n, qubit);
    State out(psi.size());
    double p = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (i & m) continue;
        const C overlap = std::conj(eig[0]) * psi[i] + std::conj(eig[1]) * psi[i | m];
        out[i] = overlap * eig[0];
        out[i | m] = overlap * eig[1];
        p += std::norm(overlap);
    }
    if (p > 0) {
        for (auto& a : out) a /= std::sqrt(p);
    }
    return {p, out};
}

double probability_equal(const State& psi, int q0, int q1, Basis basis) {
    double p = 0.0;
    for (int bit = 0; bit < 2; ++bit) {
        auto [p0, s0] = project(psi, q0, basis, bit);
        if (p0 == 0) continue;
        auto [p1, s1] = project(s0, q1, basis, bit);
        p += p0 * p1;
    }
    return p;
}

// Replaces `qubit` of a product-with-rest state by the resend eigenstate after
// measuring it. Returns (probability, post-state) for the given outcome.
std::pair<double, State> measure_and_resend(const State& psi, int qubit, Basis basis, int bit) {
    auto [p, projected] = project(psi, qubit, basis, bit);
    return {p, projected};  // projection already leaves the qubit in the eigenstate
}

}  // namespace

State bell_state(BellLabel label) {
    // Index = 2a + b.
    switch (label) {
        case BellLabel::PhiPlus: return {r, 0, 0, r};
        case BellLabel::PhiMinus: return {r, 0, 0, -r};
        case BellLabel::PsiPlus: return {0, r, r, 0};
        case BellLabel::PsiMinus: return {0, r, -r, 0};
    }
    throw std::invalid_argument("label");
}

State single_state(SingleState s) {
    switch (s) {
        case SingleState::Zero: return {1, 0};
        case SingleState::One: return {0, 1};
        case SingleState::Plus: return {r, r};
        case SingleState::Minus: return {r, -r};
    }
    throw std::invalid_argument("state");
}

State kron(const State& a, const State& b) {
    State out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    }
    return out;
}

State apply(const State& psi, Gate gate, int qubit) {
    const Mat2 u = matrix(gate);
    const std::size_t m = mask_of(qubits_of(psi), qubit);
    State out = psi;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (i & m) continue;
        out[i] = u[0][0] * psi[i] + u[0][1] * psi[i | m];
        out[i | m] = u[1][0] * psi[i] + u[1][1] * psi[i | m];
    }
    return out;
}

std::array<double, 4> bell_probabilities(const State& psi, int first, int second) {
    const int n = qubits_of(psi);
    const std::size_t mf = mask_of(n, first);
    const std::size_t ms = mask_of(n, second);
    std::array<double, 4> probs{};
    for (std::size_t l = 0; l < 4; ++l) {
        const State b = bell_state(kAllBellLabels[l]);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            if (i & (mf | ms)) continue;
            C overlap = 0;
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t c = 0; c < 2; ++c) {
                    const std::size_t idx = i | (a ? mf : 0) | (c ? ms : 0);
                    overlap += std::conj(b[2 * a + c]) * psi[idx];
                }
            }
            probs[l] += std::norm(overlap);
        }
    }
    return probs;
}

BellLabel pauli_on_pair(BellLabel start, Pauli pauli, int photon) {
    const State psi = apply(bell_state(start), pauli.gate(), photon);
    const auto probs = bell_probabilities(psi, 0, 1);
    for (std::size_t l = 0; l < 4; ++l) {
        if (std::abs(probs[l] - 1.0) < 1e-12) return kAllBellLabels[l];
    }
    throw std::logic_error("Pauli on a Bell pair did not give a Bell state");
}

std::vector<SwapRow> swap_table() {
    std::vector<SwapRow> rows;
    for (BellLabel left : kAllBellLabels) {
        for (BellLabel right : kAllBellLabels) {
            const State psi = kron(bell_state(left), bell_state(right));  // qubits 0..3 = photons 1..4
            for (std::size_t m = 0; m < 4; ++m) {
                const State bm = bell_state(kAllBellLabels[m]);
                // Post-measurement state of (1,4): sum over bits of photons 2,3.
                State rest(4);
                for (std::size_t q1 = 0; q1 < 2; ++q1) {
                    for (std::size_t q4 = 0; q4 < 2; ++q4) {
                        C acc = 0;
                        for (std::size_t q2 = 0; q2 < 2; ++q2) {
                            for (std::size_t q3 = 0; q3 < 2; ++q3) {
                                acc += std::conj(bm[2 * q2 + q3]) * psi[8 * q1 + 4 * q2 + 2 * q3 + q4];
                            }
                        }
                        rest[2 * q1 + q4] = acc;
                    }
                }
                double p = 0;
                for (auto a : rest) p += std::norm(a);
                if (p < 1e-12) continue;
                for (auto& a : rest) a /= std::sqrt(p);
                const auto probs = bell_probabilities(rest, 0, 1);
                std::size_t result = 4;
                for (std::size_t l = 0; l < 4; ++l) {
                    if (std::abs(probs[l] - 1.0) < 1e-12) result = l;
                }
                if (result == 4) throw std::logic_error("swap left (1,4) outside the Bell basis");
                rows.push_back({left, right, kAllBellLabels[m], p, kAllBellLabels[result]});
            }
        }
    }
    return rows;
}

double intercept_resend_check_error(double prob_eve_z) {
    const State pair = bell_state(BellLabel::PsiMinus);  // qubit 0 in transit, qubit 1 kept
    double error = 0.0;
    for (Basis eve : {Basis::Z, Basis::X}) {
        const double pe = eve == Basis::Z ? prob_eve_z : 1.0 - prob_eve_z;
        for (int bit = 0; bit < 2; ++bit) {
            auto [p, post] = measure_and_resend(pair, 0, eve, bit);
            for (Basis check : {Basis::Z, Basis::X}) {
                // ψ− should give opposite outcomes in either basis.
                error += pe * p * 0.5 * probability_equal(post, 0, 1, check);
            }
        }
    }
    return error;
}

double decoy_error(SingleState prepared, double prob_eve_z) {
    const State s = single_state(prepared);
    double error = 0.0;
    for (Basis eve : {Basis::Z, Basis::X}) {
        const double pe = eve == Basis::Z ? prob_eve_z : 1.0 - prob_eve_z;
        for (int bit = 0; bit < 2; ++bit) {
            auto [p, resent] = measure_and_resend(s, 0, eve, bit);
            if (p == 0) continue;
            auto [wrong, unused] = project(resent, 0, basis_of(prepared), 1 - bit_of(prepared));
            error += pe * p * wrong;
        }
    }
    return error;
}

double decoy_error(double prob_eve_z) {
    double total = 0;
    for (SingleState s : kAllSingleStates) total += decoy_error(s, prob_eve_z) / 4.0;
    return total;
}

double intercept_resend_information(double prob_eve_z) {
    // I(bit; eve record | prep basis) = Σ_basis P(basis) I(bit; eve record | basis).
    double info = 0.0;
    for (Basis prep : {Basis::Z, Basis::X}) {
        // Joint distribution over (true bit, eve basis, eve bit).
        double joint[2][2][2] = {};
        for (int bit = 0; bit < 2; ++bit) {
            const State s = single_state(eigenstate(prep, bit));
            for (Basis eve : {Basis::Z, Basis::X}) {
                const double pe = eve == Basis::Z ? prob_eve_z : 1.0 - prob_eve_z;
                for (int e = 0; e < 2; ++e) {
                    joint[bit][static_cast<int>(eve)][e] = 0.5 * pe * project(s, 0, eve, e).first;
                }
            }
        }
        double h = 0.0;
        for (int eb = 0; eb < 2; ++eb) {
            for (int e = 0; e < 2; ++e) {
                const double py = joint[0][eb][e] + joint[1][eb][e];
                for (int bit = 0; bit < 2; ++bit) {
                    const double pxy = joint[bit][eb][e];
                    if (pxy > 0) h += pxy * std::log2(pxy / (0.5 * py));
                }
            }
        }
        info += 0.5 * h;
    }
    return info;
}

double substituted_decoy_pass_rate() {
    // Qubits: 0 = A (dealer), 1 = T (kept by the substituter), 2 = A′ (kept), 3 = C′ (returned).
    const State base = kron(bell_state(BellLabel::PsiMinus), bell_state(BellLabel::PsiMinus));
    double pass = 0.0;
    for (Pauli u : kAllPaulis) {
        State psi = apply(base, u.gate(), 3);
        psi = apply(psi, Gate::H, 3);  // last agent's H
        psi = apply(psi, Gate::H, 3);  // dealer undoes it
        const auto probs = bell_probabilities(psi, 0, 3);
        for (std::size_t l = 0; l < 4; ++l) {
            if (decode_bell_to_pauli(kAllBellLabels[l]) == u) pass += 0.25 * probs[l];
        }
    }
    return pass;
}

double xor_replacement_mismatch_rate() {
    int differ = 0;
    int total = 0;
    for (Pauli truth : kAllPaulis) {
        for (Pauli used : kAllPaulis) {
            ++total;
            if (!(truth == used)) ++differ;
        }
    }
    return static_cast<double>(differ) / total;
}

}  // namespace qss::oracle
