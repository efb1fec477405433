#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qss/pauli.hpp"
#include "qss/types.hpp"

/// Brute-force reference computations on explicit dense state vectors.
///
/// Nothing here samples or touches QuantumRegister; every number is an exact
/// enumeration over outcomes, used as the expected value for statistical and
/// equivalence tests and printed by `qss-sim oracle`.
namespace qss::oracle {

/// Dense state with qubit 0 as the most significant index bit.
using State = std::vector<std::complex<double>>;

State bell_state(BellLabel label);
State single_state(SingleState s);
State kron(const State& a, const State& b);
/// Applies `gate` to `qubit` of an n-qubit state.
State apply(const State& psi, Gate gate, int qubit);

/// Probability of each Bell outcome (in kAllBellLabels order) when qubits
/// (first, second) of `psi` are Bell-measured.
std::array<double, 4> bell_probabilities(const State& psi, int first, int second);

/// Label of `pauli` applied to photon `photon` (0 or 1) of a pair prepared in
/// `start`. Throws std::logic_error when the outcome is not deterministic.
BellLabel pauli_on_pair(BellLabel start, Pauli pauli, int photon);

struct SwapRow {
    BellLabel left;
    BellLabel right;
    BellLabel measured;
    double probability;
    BellLabel result;  // deterministic label left on (1,4)
};

/// Every (left, right, measured) combination with non-zero probability.
std::vector<SwapRow> swap_table();

/// Z/X check error when an interceptor measures one photon of a ψ− pair in Z
/// with probability `prob_eve_z` (else X) and resends the eigenstate; the
/// checkers use a uniformly random common basis.
double intercept_resend_check_error(double prob_eve_z);

/// Error rate of four-state checking photons (uniform over the states) after
/// an interceptor measuring in Z with probability `prob_eve_z`.
double decoy_error(double prob_eve_z);

/// Same, for a single prepared state.
double decoy_error(SingleState prepared, double prob_eve_z);

/// Mutual information (bits) between the interceptor's record and the true bit
/// of a four-state photon, given the preparation basis is public afterwards.
double intercept_resend_information(double prob_eve_z);

/// Pass probability of one H-decoy verified by the dealer when the returned
/// photon belongs to a substituted pair: the dealer holds half of ψ−(A,T),
/// the returned photon is half of ψ−(A′,C′) carrying a uniformly random
/// Pauli U followed by H, the dealer undoes H, Bell-measures and accepts when
/// the decoded Pauli equals the announced U.
double substituted_decoy_pass_rate();

/// Fraction of positions whose decode changes when one uniformly random
/// Pauli term in the XOR is replaced by an independent uniform one.
double xor_replacement_mismatch_rate();

}  // namespace qss::oracle
