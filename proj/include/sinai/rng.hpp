#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random numbers: every draw is a pure function of (key, counter),
// so lazily materialized sequences are order-independent and parallel workers
// need no shared generator state.

namespace sinai::rng {

// SplitMix64 finalizer (Steele, Lea, Flood 2014); full 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Keyed counter hash: two finalizer rounds with the key injected between them.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(mix64(counter + 0x9E3779B97F4A7C15ull) ^ (key + 0x632BE59BD9B4E019ull));
}

// Derive an independent sub-stream key (worker index, walker index, ...).
constexpr std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream) noexcept {
    return at(master ^ 0xA5A5A5A55A5A5A5Aull, stream);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_u01(std::uint64_t word) noexcept {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

inline double u01(std::uint64_t key, std::uint64_t counter) noexcept {
    return to_u01(at(key, counter));
}

// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
inline double gaussian(std::uint64_t key, std::uint64_t counter) noexcept {
    const double u1 = u01(key, 2 * counter);
    const double u2 = u01(key, 2 * counter + 1);
    // 1 - u1 lies in (0, 1], so the log is finite.
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.28318530717958647692 * u2);
}

// Stateful convenience wrapper around the counter hash.
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    Stream(std::uint64_t master, std::uint64_t stream) : key_(derive_key(master, stream)) {}

    std::uint64_t next_u64() noexcept { return at(key_, counter_++); }
    double u01() noexcept { return to_u01(next_u64()); }
    double gaussian() noexcept {
        const double u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.28318530717958647692 * u2);
    }
    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace sinai::rng
