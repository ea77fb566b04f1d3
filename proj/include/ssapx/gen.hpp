#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssapx/intset.hpp"

namespace ssapx {

/// Instance generators for testing and benchmarking.
struct GenSpec {
    std::size_t n = 16;
    Value max_x = 1 << 20;
    enum class Dist { uniform, planted_perfect, two_cluster } dist = Dist::uniform;
    std::uint64_t seed = 0;
};

struct GenResult {
    std::vector<Value> items;
    /// Absent for partition-format instances (planted_perfect).
    std::optional<Value> target;
};

GenResult generate_instance(const GenSpec& spec);

GenSpec::Dist parse_dist(const std::string& name);

}  // namespace ssapx
