#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssapx/levels.hpp"
#include "ssapx/witness.hpp"

namespace ssapx {

/// A subset-sum instance: positive 64-bit items, target, accuracy.
struct Instance {
    std::vector<Value> items;
    Value target = 0;
    double eps = 0.25;
};

/// Outcome of the linear-time screen: either the instance is solved exactly
/// (everything fits), or a certificate subset with sum in [t/2, t] proves
/// OPT >= t/2.
struct TrivialCheck {
    bool exact = false;
    std::vector<std::uint32_t> subset;
    Value sum = 0;
};
TrivialCheck trivial_check(const std::vector<Value>& items, Value target);

/// Merges items below eps*t into synthetic items of value < 2*eps*t (greedy
/// prefix groups in input order); leftovers summing below eps*t are dropped.
struct PrepResult {
    std::vector<Value> items;
    std::vector<std::vector<std::uint32_t>> origin;  // per item: source indices
    std::vector<std::uint32_t> deleted;
};
PrepResult preprocess_small_items(const std::vector<Value>& items, Value inv_eps,
                                  Value target);

/// Scales by eps^2*t and splits into dyadic groups alpha = 1, 2, 4, ... so
/// that within a group, values divided by alpha land in [1/eps, 2/eps).
struct ScaledGroup {
    Value alpha = 1;
    std::vector<std::uint32_t> members;  // indices into the preprocessed items
    std::vector<Value> values;           // scaled and alpha-divided
    Value group_target = 0;              // floor(inv_eps^2 / alpha)
};
struct ScaleResult {
    std::vector<ScaledGroup> groups;
    Value scaled_target = 0;  // inv_eps^2
};
ScaleResult scale_and_group(const std::vector<Value>& items, Value inv_eps,
                            Value target);

/// Dyadic window list: powers of two beta with beta/eps < top. The base
/// window [0, 1/eps] is implicit and computed directly.
std::vector<Value> dyadic_windows(Value top, Value inv_eps);

/// {total - s : s in S}, same certified error; covers the mirrored window.
ValueSet mirror_upper_half(const ValueSet& s, Value total);

/// Exact set of subset sums up to cap (bit-parallel DP); the validation
/// oracle. Rejects instances whose |X| * cap exceeds the desk-scale budget.
IntSet exact_subset_sums(const std::vector<Value>& items, Value cap);

/// Exact optimum and witness below target (DP with per-item snapshots).
struct ExactSolve {
    Value value = 0;
    std::vector<std::uint32_t> witness;
};
ExactSolve exact_solve(const std::vector<Value>& items, Value target);
bool exact_solve_feasible(std::size_t n, Value target);

struct SolveOptions {
    std::uint64_t seed = 12345;
    bool value_only = false;
    /// Internal accuracy multiplier 1/eps_int = c_adj / eps_user; 0 selects
    /// the default policy. Escalated automatically when the certified error
    /// is too large.
    Value c_adj = 0;
    std::uint64_t qstar_inv = 0;
    DensityConfig density;
    SumsetConfig sumset;
    int max_retries = 2;
};

struct SolveResult {
    std::string mode = "subset-sum";
    Value value = 0;
    std::vector<std::uint32_t> witness;  // indices into the original items
    Value delta_cert = 0;                // certified additive error, original units
    Value guarantee_upper = 0;           // floor((1+eps) * t)
    bool certified = false;              // delta_cert passed the eps*t/4 gate
    bool exact = false;
    Value opt_floor = 0;                 // certified lower bound on OPT (t/2 basis)
    std::uint64_t seed = 0;
    double eps = 0;
    Value target = 0;
    std::size_t n = 0;
    // partition mode extras
    std::vector<std::uint32_t> complement;
    Value complement_sum = 0;
    // reporting
    EngineStats engine;
    std::uint64_t levels_computed = 0;
    bool dense_fired = false;
    Value c_adj_used = 0;
    int retries = 0;
    double wall_ms = 0;
};

/// Weak approximation: returns Y with (1-eps)*OPT <= sum(Y) <= (1+eps)*t,
/// with the certified error tracked exactly and re-verified per run.
SolveResult solve_weak_subset_sum(const Instance& inst, const SolveOptions& opt = {});

/// Partition via target = floor(sum/2); fills the complement side.
SolveResult solve_partition(const std::vector<Value>& items, double eps,
                            const SolveOptions& opt = {});

}  // namespace ssapx
