#pragma once

#include <cstdint>
#include <initializer_list>

namespace ssapx {

// Deterministic splittable random streams. Every consumer of randomness in
// the library receives an explicit Stream; independent streams are derived
// from a root seed plus an integer path, so concurrent or reordered callers
// always observe the same draws.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        // SplitMix64 step.
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n), unbiased via rejection.
    std::uint64_t uniform(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli_half() { return (next_u64() & 1ull) != 0; }

private:
    std::uint64_t state_;
};

// Derives an independent child stream from (seed, path). Mixing each path
// component through SplitMix64 keeps sibling streams uncorrelated.
inline Stream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    Stream s(seed ^ 0x5851f42d4c957f2dull);
    std::uint64_t acc = s.next_u64();
    for (std::uint64_t p : path) {
        Stream t(acc ^ (p + 0x9e3779b97f4a7c15ull));
        acc = t.next_u64();
    }
    return Stream(acc);
}

}  // namespace ssapx
