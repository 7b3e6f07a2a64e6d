#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is the
// user seed and the counter is (block index, stream), so every sub-batch owns
// a disjoint, reproducible stream regardless of scheduling.

#include <array>
#include <cstdint>
#include <limits>

namespace hyperlevy {

using Philox4x32Block = std::array<std::uint32_t, 4>;

constexpr Philox4x32Block philox4x32_10(Philox4x32Block ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
        const std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
        const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

/// UniformRandomBitGenerator over one Philox stream.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (lane_ == 4) refill();
        return buffer_[lane_++];
    }

    /// Uniform double in (0, 1) with 53 random bits.
    double uniform01() {
        const std::uint64_t hi = (*this)();
        const std::uint64_t lo = (*this)();
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (double(bits) + 0.5) * 0x1.0p-53;
    }

    void discard(unsigned long long n) {
        while (n > 0 && lane_ < 4) {
            ++lane_;
            --n;
        }
        block_ += n / 4;
        n %= 4;
        if (n > 0) {
            refill();
            lane_ = unsigned(n);
        }
    }

    std::uint64_t stream() const noexcept { return stream_; }

private:
    void refill() {
        buffer_ = philox4x32_10({std::uint32_t(block_), std::uint32_t(block_ >> 32), std::uint32_t(stream_),
                                 std::uint32_t(stream_ >> 32)},
                                key_);
        ++block_;
        lane_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Philox4x32Block buffer_{};
    unsigned lane_ = 4;
};

}  // namespace hyperlevy
