#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssapx/driver.hpp"

namespace ssapx {

/// Parsed instance file. Subset-sum files start with "n t"; partition files
/// with "n" alone. Items follow, whitespace separated.
struct InstanceFile {
    std::vector<Value> items;
    std::optional<Value> target;  // absent for partition files
};

struct IoError {
    std::string message;
    int line = 0;
};

/// Throws std::runtime_error with a line-numbered message on malformed input.
InstanceFile read_instance(const std::string& path);
void write_instance(const std::string& path, const std::vector<Value>& items,
                    std::optional<Value> target);

/// Flat key/value result record, round-trippable for oracle checking.
struct ResultDocument {
    std::string mode = "subset-sum";
    std::size_t n = 0;
    Value target = 0;
    double eps = 0;
    std::uint64_t seed = 0;
    Value value = 0;
    std::vector<std::uint32_t> witness;
    Value delta_cert = 0;
    Value guarantee_upper = 0;
    double guarantee_lower_coeff = 0;  // 1 - eps
    bool certified = false;
    bool exact = false;
    bool value_only = false;
    Value complement_sum = 0;  // partition mode
    double wall_ms = 0;
    std::uint64_t levels_computed = 0;
    bool dense_fired = false;
    std::uint64_t sumset_calls = 0;

    static ResultDocument from_solve(const SolveResult& r, bool value_only);
    std::string to_text() const;
    std::string to_json() const;
    static ResultDocument parse(const std::string& path);
};

}  // namespace ssapx
