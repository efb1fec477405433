#include "qss/stream.hpp"

#include <limits>
#include <stdexcept>

namespace qss {

Stream::Stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

std::uint64_t Stream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Stream::below: bound must be positive");
    // Rejection sampling on the top of the range keeps the result unbiased.
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v > limit);
    return v % bound;
}

}  // namespace qss
