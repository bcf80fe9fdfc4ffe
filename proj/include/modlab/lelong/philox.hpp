#pragma once

#include <array>
#include <cstdint>

namespace modlab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless: the
// output block is a pure function of (counter, key).
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit constexpr Philox4x32(Key key) : key_(key) {}

    constexpr Block operator()(Block ctr) const {
        Key k = key_;
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k[0] += kW0;
                k[1] += kW1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ k[0], lo1, hi0 ^ ctr[3] ^ k[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
    Key key_;
};

// Sequential view of one Philox stream: counter = (index lo, index hi, c2, c3).
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint32_t c2, std::uint32_t c3)
        : gen_({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}), c2_(c2), c3_(c3) {}

    // Uniform double in (0, 1), 53 random bits.
    double uniform() {
        if (used_ == 2) refill();
        const std::uint64_t a = block_[2 * used_], b = block_[2 * used_ + 1];
        ++used_;
        const std::uint64_t bits = ((a << 32) | b) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t blocks_consumed() const noexcept { return index_; }

private:
    void refill() {
        block_ = gen_({static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32), c2_, c3_});
        ++index_;
        used_ = 0;
    }

    Philox4x32 gen_;
    std::uint32_t c2_, c3_;
    std::uint64_t index_ = 0;
    Philox4x32::Block block_{};
    int used_ = 2;
};

}  // namespace modlab
