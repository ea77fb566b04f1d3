#pragma once

#include <cstdint>
#include <vector>

#include "ssapx/levels.hpp"

namespace ssapx {

/// A subset H of A+B of prescribed size k that keeps 0 and max(A)+max(B).
struct PartialSumset {
    IntSet h;
    Value k = 0;
};

/// Carves a size-k certified subset of A+B. When |A| >= k the subset comes
/// straight from A; otherwise the shortest prefix of B whose sumset with A
/// reaches k elements is located by binary search over size-threshold tests
/// and that sumset is trimmed. Fails loudly if k exceeds |A+B|.
PartialSumset partial_sumset(const IntSet& a, const IntSet& b, Value k,
                             Stream rng, EngineStats* stats = nullptr);

/// The retained computation trace: every node set the run produced, wired so
/// any root value can be walked back to concrete items.
class TraceTree {
public:
    enum class Kind : std::uint8_t { leaf, round, sum, partial, union_node };

    struct Node {
        Kind kind;
        int child_a = -1;
        int child_b = -1;
        std::vector<Value> set;
        // round: pre-image per element (same index as set)
        std::vector<Value> pre;
        // leaf: item position per element (kNoItem for 0)
        std::vector<std::uint32_t> leaf_item;
        // union_node: candidate children and per-element chosen child slot
        std::vector<int> union_children;
        std::vector<std::uint32_t> union_tag;
    };

    static constexpr std::uint32_t kNoItem = ~0u;

    int add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return nodes_.size(); }

    int root = -1;
    Value delta_cert = 0;

private:
    std::vector<Node> nodes_;
};

struct PartialLevelResult {
    Level next;
    DensityVerdict verdict;
};

/// Advance that is always witness-safe: sparse levels are computed in full;
/// dense levels are replaced by certified partial sumsets (size_floor elements
/// for surviving pairs, {0, max+max} for the rest) instead of the grid.
PartialLevelResult compute_partial_level(const Level& level, const PipelineConfig& cfg,
                                         Stream rng, EngineStats* engine = nullptr,
                                         PipelineStats* stats = nullptr);

struct WitnessRun {
    ValueSet values;
    TraceTree trace;
};

/// Same contract as run_value_pipeline, plus a trace: every element of the
/// returned set can be backtracked to a sub-multiset of the items whose sum
/// is within delta_cert of it.
WitnessRun run_witness_pipeline(const std::vector<Value>& items, Value beta,
                                Value inv_eps, const PipelineConfig& cfg, Stream rng,
                                EngineStats* engine = nullptr,
                                PipelineStats* stats = nullptr,
                                Value coverage_top = 0);

/// Walks a root value down the trace and returns item positions (into the
/// items vector the run was given). Throws if the value is not in the root
/// set or no decomposition exists (a trace invariant breach).
std::vector<std::uint32_t> backtrack(const TraceTree& trace, Value s);

}  // namespace ssapx
