#pragma once

#include <cstdint>

namespace rrmul {

/// SplitMix64 generator. std::mt19937_64 plus the standard distributions
/// would not give bit-identical streams across library implementations;
/// this one does, which the reproducibility contract of the CLI needs.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t(0)) / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    /// Independent child stream; used to derive per-trial seeds.
    SeededRng derive(std::uint64_t index) const {
        SeededRng mixer(state_ ^ (0xa0761d6478bd642full * (index + 1)));
        return SeededRng(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

} // namespace rrmul
