#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ssapx/intset.hpp"
#include "ssapx/rng.hpp"

namespace ssapx {

/// Two-layer color-coding parameters. Probabilities are unit fractions: a
/// target error probability q is passed as its inverse q_inv (q = 1/q_inv).
struct CCParams {
    Value m = 1;  // groups, power of two
    Value g = 1;  // subcells per group, power of two
    Value r = 1;  // repetitions
};

/// One family of r random partitions of the item index set into m*g cells.
/// Cells are stored sparsely: per repetition, a sorted list of
/// (cell_index, item positions); absent cells are empty. cell_index is
/// group * g + subcell.
struct PartitionFamily {
    CCParams params;
    std::uint64_t n_items = 0;
    bool small_path = false;  // all repetitions identical by construction
    std::vector<std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>>> reps;

    const std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>>& cells(
        std::size_t j) const {
        return reps[small_path ? 0 : j];
    }
};

/// m = next power of two >= k/log2(k*q_inv), g = next power of two >=
/// 36*log2^2(k*q_inv), r = ceil(log2(k*q_inv)). Rejects k*q_inv <= 2.
CCParams cc_params(Value k, u128 q_inv);

/// Two-layer random partition: items to m groups uniformly, then per
/// repetition each group's items to g subcells uniformly. Streams are derived
/// per (repetition, group), so the family is a pure function of the seed.
PartitionFamily color_coding(const std::vector<Value>& items, Value k, u128 q_inv,
                             Stream rng);

/// Deterministic partition for |X| <= m*g: item i lands in cell i, identical
/// across all r repetitions.
PartitionFamily small_color_coding(const std::vector<Value>& items, Value m,
                                   Value g, Value r);

/// Color coding with the extra guarantee that in every repetition the cell
/// maxima add up to at least min_total (callers pass 4*beta/eps). Values must
/// lie in [inv_eps, 2*inv_eps]. Degenerate parameters (k <= 2 or k*q_inv <= 2)
/// fall back to one exhaustive single-item partition.
PartitionFamily modified_color_coding(const std::vector<Value>& items, Value beta,
                                      Value inv_eps, u128 qstar_inv, Stream rng,
                                      Value min_total_override = 0);

/// Sum over cells of max(cell values) for one repetition (empty cell counts 0).
u128 family_max_sum(const PartitionFamily& family, const std::vector<Value>& items,
                    std::size_t j);

}  // namespace ssapx
