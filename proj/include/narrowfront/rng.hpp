#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace narrowfront::rng {

// splitmix64 finalizer, used both as a mixer and for key derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Philox4x32-10 counter-based generator. One invocation encrypts the
// 128-bit counter under the 64-bit key and yields four 32-bit words.
class Philox4x32 {
public:
    explicit Philox4x32(std::uint64_t key) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          ctr_{0, 0, 0, 0} {}

    std::array<std::uint32_t, 4> next_block() noexcept {
        std::array<std::uint32_t, 4> x = ctr_;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * x[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * x[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
        return x;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
};

// A deterministic random stream. Independent streams are derived by
// chaining ids through splitmix64, e.g.
//   Stream s(master); auto path = s.derived(kModule).derived(path_index);
class Stream {
public:
    explicit Stream(std::uint64_t key) noexcept : gen_(splitmix64(key)), key_(key) {}

    Stream derived(std::uint64_t id) const noexcept {
        return Stream(splitmix64(key_ ^ splitmix64(id + 0x632be59bd9b4e019ull)));
    }

    std::uint64_t key() const noexcept { return key_; }

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) {
            block_ = gen_.next_block();
            pos_ = 0;
        }
        return block_[pos_++];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on (0, 1]; never returns 0 so log() is safe.
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; pairs are cached.
    double normal() noexcept {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    Philox4x32 gen_;
    std::uint64_t key_;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Module tags for substream derivation.
inline constexpr std::uint64_t kReflectedSde = 0x5244;
inline constexpr std::uint64_t kLimitSde = 0x4c53;
inline constexpr std::uint64_t kFeynmanKac = 0x464b;
inline constexpr std::uint64_t kRandomMedia = 0x524d;
inline constexpr std::uint64_t kEnvPhases = 0x4550;

}  // namespace narrowfront::rng
