#pragma once

#include <cstdint>
#include <vector>

#include "ssapx/intset.hpp"
#include "ssapx/rng.hpp"
#include "ssapx/sumset.hpp"

namespace ssapx {

/// Density machinery constants. The arithmetic-progression guarantee behind
/// the dense branch only asserts that a sufficiently large c exists; c = 4 is
/// the working default and the witness path stays sound for any value.
struct DensityConfig {
    Value c = 4;
};

/// Outcome of estimating the density of the next level's pairwise sumsets
/// B_i = A_{2i-1} + A_{2i} without computing them.
struct DensityVerdict {
    bool dense = false;
    /// Dense: pair indices i (0-based) with |B_i| >= size_floor.
    std::vector<std::size_t> indices;
    Value size_floor = 0;
    /// Sparse: the certified sparsity level (4 * gamma).
    Value sparsity_level = 0;
};

struct DensityStats {
    std::uint64_t threshold_queries = 0;
    std::uint64_t rounds = 0;
};

/// Test oracle: scans every k in [2, u+1] against the exact |B_i| values.
bool is_gamma_dense_bruteforce(const std::vector<Value>& sizes, Value gamma,
                               Value u, Value c);

/// Estimates the density of {A_1+A_2, A_3+A_4, ...} via size-threshold
/// queries at doubling thresholds 2^j. Never materializes the pairwise
/// sumsets. Dense verdicts carry the surviving index set and the size floor
/// ceil(2*c*gamma*u / |I|) + 1 that every surviving pair is certified to meet.
DensityVerdict estimate_density(const std::vector<IntSet>& nodes, Value gamma,
                                Value u, const DensityConfig& cfg, Stream rng,
                                EngineStats* engine_stats = nullptr,
                                DensityStats* stats = nullptr);

/// Total-size ceiling for a gamma-sparse collection of l sets over [0, u]:
/// l + c*gamma*u*(1 + ceil(log2 u)).
Value sparse_total_size_bound(Value l, Value gamma, Value u, Value c);

/// {w + j*delta : 0 <= j <= (v - w) / delta}.
IntSet grid_approximation(Value w, Value v, Value delta);

}  // namespace ssapx
