#pragma once

#include <cstdint>

namespace nano {

/// splitmix64 (the SplittableRandom finalizer). Ten lines of fixed-width
/// integer arithmetic, so a reimplementation in any language reproduces
/// the exact stream; runs keyed by the same seed draw identically
/// everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). Bitmask rejection: no modulo bias, no floating
    /// point in the draw path.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = ~0ull >> __builtin_clzll(n - 1);
        for (;;) {
            const std::uint64_t draw = next_u64() & mask;
            if (draw < n) return draw;
        }
    }

    /// Derives an independent stream keyed by the next draw.
    SplitMix64 split() { return SplitMix64(next_u64()); }

private:
    std::uint64_t state_;
};

}  // namespace nano
