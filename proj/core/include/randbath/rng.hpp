// rng.hpp: counter-based random numbers (Philox4x32-10)
//
// Every (seed, stream) pair names an independent sequence; the n-th value of
// a stream is a pure function of (seed, stream, n). Trajectories and bath
// modes each get their own stream, so results do not depend on how the work
// is scheduled.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace randbath {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter encrypt(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// Sequential view of one Philox stream. Each block yields two 53-bit
// uniforms, which Box-Muller turns into two standard normals.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    // Uniform on (0, 1).
    double uniform() noexcept {
        if (!has_second_uniform_) {
            refill();
            has_second_uniform_ = true;
            return u_[0];
        }
        has_second_uniform_ = false;
        return u_[1];
    }

    double normal() noexcept {
        if (has_cached_normal_) {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        refill();
        has_second_uniform_ = false;
        const double radius = std::sqrt(-2.0 * std::log(u_[0]));
        const double angle = 2.0 * std::numbers::pi * u_[1];
        cached_normal_ = radius * std::sin(angle);
        has_cached_normal_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t blocks_used() const noexcept { return block_; }

private:
    void refill() noexcept {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                      stream_lo_, stream_hi_};
        const auto out = Philox4x32::encrypt(ctr, key_);
        ++block_;
        const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        // (k + 0.5) / 2^53 lies strictly inside (0, 1).
        constexpr double scale = 1.0 / 9007199254740992.0;
        u_[0] = (static_cast<double>(a >> 11) + 0.5) * scale;
        u_[1] = (static_cast<double>(b >> 11) + 0.5) * scale;
    }

    Philox4x32::Key key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint64_t block_{0};
    std::array<double, 2> u_{};
    bool has_second_uniform_{false};
    bool has_cached_normal_{false};
    double cached_normal_{0.0};
};

// Stream index for mode `mode` of trajectory `trajectory`.
constexpr std::uint64_t trajectory_stream(std::uint64_t trajectory, std::uint64_t mode) noexcept {
    return (trajectory << 32) | (mode & 0xFFFFFFFFu);
}

}  // namespace randbath
