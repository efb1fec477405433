#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qss/oracle.hpp"
#include "qss/quantum_register.hpp"

namespace qss::test {

/// Register layout (photons[j] on bit j) to oracle layout (qubit 0 most significant).
inline oracle::State to_oracle_order(const std::vector<Amplitude>& amps, std::size_t qubits) {
    oracle::State out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t q = 0; q < qubits; ++q) {
            if (i >> q & 1U) j |= std::size_t{1} << (qubits - 1 - q);
        }
        out[j] = amps[i];
    }
    return out;
}

/// |⟨a|b⟩|, so 1 means equal up to global phase.
inline double overlap(const oracle::State& a, const oracle::State& b) {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

inline double max_diff(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Half-width of a 3σ binomial band.
inline double three_sigma(double p, std::size_t n) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace qss::test
