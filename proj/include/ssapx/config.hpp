#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace ssapx {

/// Environment variable consulted for the default seed when --seed is absent.
inline constexpr const char* kSeedEnvVar = "SSAPX_SEED";
inline constexpr std::uint64_t kDefaultSeed = 12345;

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnvVar)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return kDefaultSeed;
}

}  // namespace ssapx
