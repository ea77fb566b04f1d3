#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssapx/color_coding.hpp"
#include "ssapx/density.hpp"
#include "ssapx/intset.hpp"
#include "ssapx/rng.hpp"
#include "ssapx/sumset.hpp"

namespace ssapx {

struct PipelineConfig {
    DensityConfig density;
    SumsetConfig sumset;
    /// q* inverse; 0 selects (n + 1/eps)^2.
    std::uint64_t qstar_inv = 0;
    /// Runtime invariant checking on every level (cheap at desk scale).
    bool check_invariants = true;
};

struct PipelineStats {
    std::uint64_t levels_computed = 0;
    bool dense_fired = false;
    DensityStats density;
};

/// One tier of the sumset tree. Height h holds leaf_count / 2^h nodes, every
/// node contains 0, and after round_level all elements are multiples of
/// 2^(h+1). err_cum is the certified additive error accumulated by rounding.
struct Level {
    std::uint32_t height = 0;
    std::vector<IntSet> nodes;
    Value leaf_count = 0;  // padded leaf count of the tree, constant per run
    Value inv_eps = 0;
    Value beta = 0;
    Value coverage_top = 0;  // window portion the run must cover (<= 2*beta/eps)
    Value clip_limit = 0;    // values above this (except node maxima) are dropped
    Value err_cum = 0;
    bool rounded = false;

    Value universe() const { return (Value{2} << height) * inv_eps; }
    u128 max_sum() const {
        u128 s = 0;
        for (const auto& n : nodes) s += n.empty() ? 0 : n.max();
        return s;
    }
};

/// Output of a pipeline run: a set approximating the subset sums of the
/// window [beta/eps, 2*beta/eps] with certified additive error delta_cert.
struct ValueSet {
    IntSet elements;
    Value window_lo = 0;
    Value window_hi = 0;
    Value delta_cert = 0;
    enum class Provenance { tree_root, dense_grid } provenance = Provenance::tree_root;
};

/// Either the next level (sparse case) or the grid shortcut (dense case).
struct AdvanceOutcome {
    std::optional<Level> next;
    std::optional<ValueSet> grid;
    DensityVerdict verdict;
};

namespace tree {
/// gamma = max(4, ceil(4 * leaf_count / beta)).
Value gamma_for(Value leaf_count, Value beta);
/// Clip a node to [0, limit] while keeping 0 and its maximum element.
IntSet clip_node(const IntSet& node, Value limit);
/// Leaf sets for one repetition: per padded group block of p cells, each leaf
/// is {0} plus the cell's values. Group blocks are the tree layout shared by
/// the value and witness pipelines.
struct Layout {
    std::vector<std::uint64_t> group_ids;  // nonempty groups, padded with sentinel
    Value groups_padded = 1;               // m'' (power of two)
    Value cells_per_group = 1;             // p (power of two)
    Value leaf_count() const { return groups_padded * cells_per_group; }
    Value bottom_heights() const { return cells_per_group <= 1 ? 0 : ceil_log2(cells_per_group); }
    static constexpr std::uint64_t kPad = ~0ull;
};
Layout plan_layout(const PartitionFamily& family);
void check_level(const Level& lv);
}  // namespace tree

/// Leaves of the tree for repetition `rep`: cell value-sets with 0 adjoined.
/// Item provenance (value -> item positions per leaf) is emitted through
/// `leaf_values` when non-null, in leaf order, for the witness pipeline.
Level level_zero(const PartitionFamily& family, std::size_t rep,
                 const std::vector<Value>& items, Value beta, Value inv_eps,
                 Value coverage_top, const tree::Layout& layout,
                 std::vector<std::vector<std::pair<Value, std::uint32_t>>>* leaf_values = nullptr);

/// Rounds every element up to a multiple of 2^(h+1) and charges the level's
/// worst case (node_count * 2^(h+1)) to err_cum.
void round_level(Level& level);

/// Density-estimated advance: sparse levels are computed in full through the
/// sumset engine, dense levels short-circuit to the arithmetic grid over the
/// window with step 2*beta.
AdvanceOutcome advance_level(const Level& level, const PipelineConfig& cfg,
                             Stream rng, EngineStats* engine = nullptr,
                             PipelineStats* stats = nullptr);

/// Full value-only computation for one window [beta/eps, 2*beta/eps].
/// Items must lie in [1/eps, 2/eps] and sum to at least
/// max(2 * coverage_top, 4 * beta / eps clamped); coverage_top = 0 selects the
/// full window top 2*beta/eps.
ValueSet run_value_pipeline(const std::vector<Value>& items, Value beta,
                            Value inv_eps, const PipelineConfig& cfg, Stream rng,
                            EngineStats* engine = nullptr,
                            PipelineStats* stats = nullptr,
                            Value coverage_top = 0);

}  // namespace ssapx
