#pragma once

#include <array>
#include <cstdint>

namespace smpd {

/// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
/// Stateless: each 128-bit counter block maps to four independent u32
/// under a 64-bit key, so any cycle can be generated in isolation.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

/// Draw stream for one simulated cycle, keyed by (seed, cycle index).
/// Outcomes depend only on those two values, never on chunking or
/// thread count.
class CycleRng {
public:
    CycleRng(uint64_t seed, uint64_t cycle_index)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          cycle_lo_(static_cast<uint32_t>(cycle_index)),
          cycle_hi_(static_cast<uint32_t>(cycle_index >> 32)) {}

    uint32_t next_u32() {
        if (pos_ == 4) refill();
        return block_[pos_++];
    }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        const uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    void refill();

    std::array<uint32_t, 2> key_;
    uint32_t cycle_lo_, cycle_hi_;
    uint32_t block_counter_ = 0;
    std::array<uint32_t, 4> block_{};
    int pos_ = 4;
};

}  // namespace smpd
