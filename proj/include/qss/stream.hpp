#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace qss {

/// Well-known stream ids. Each party in a trial draws from its own stream.
namespace streams {
inline constexpr std::uint64_t kRegister = 0;
inline constexpr std::uint64_t kDealer = 1;
inline constexpr std::uint64_t kAdversary = 2;
inline constexpr std::uint64_t kHarness = 3;
/// Agent k uses kAgentBase + k.
inline constexpr std::uint64_t kAgentBase = 16;
}  // namespace streams

/// Deterministic random stream derived from (master seed, stream id).
/// Doubles and bounded integers are derived from raw engine output here,
/// not through <random> distributions.
class Stream {
  public:
    Stream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);

    int bit() { return static_cast<int>(engine_() >> 63); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qss
