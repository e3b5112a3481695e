#include "smpd/rng.hpp"

namespace smpd {

namespace {

constexpr uint32_t kMultA = 0xD2511F53;
constexpr uint32_t kMultB = 0xCD9E8D57;
constexpr uint32_t kWeylA = 0x9E3779B9;
constexpr uint32_t kWeylB = 0xBB67AE85;

inline void round_once(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
    const uint64_t p0 = static_cast<uint64_t>(kMultA) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(kMultB) * ctr[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
    std::array<uint32_t, 4> ctr = counter;
    std::array<uint32_t, 2> k = key;
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            k[0] += kWeylA;
            k[1] += kWeylB;
        }
        round_once(ctr, k);
    }
    return ctr;
}

void CycleRng::refill() {
    block_ = philox4x32({block_counter_++, cycle_lo_, cycle_hi_, 0x534d5044u /* "SMPD" */}, key_);
    pos_ = 0;
}

}  // namespace smpd
