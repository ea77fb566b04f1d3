#include "ssapx/density.hpp"

#include <cassert>
#include <stdexcept>

namespace ssapx {

bool is_gamma_dense_bruteforce(const std::vector<Value>& sizes, Value gamma,
                               Value u, Value c) {
    for (Value k = 2; k <= u + 1; ++k) {
        Value count = 0;
        for (Value s : sizes)
            if (s >= k) ++count;
        if (u128(count) * (k - 1) >= u128(c) * gamma * u) return true;
    }
    return false;
}

DensityVerdict estimate_density(const std::vector<IntSet>& nodes, Value gamma,
                                Value u, const DensityConfig& cfg, Stream rng,
                                EngineStats* engine_stats, DensityStats* stats) {
    if (nodes.size() % 2 != 0)
        throw std::invalid_argument("estimate_density: odd node count");
    for (const auto& n : nodes) {
        if (n.empty()) throw std::invalid_argument("estimate_density: empty node");
        if (n.max() > u) throw std::invalid_argument("estimate_density: node exceeds universe");
    }
    const std::size_t pairs = nodes.size() / 2;
    const u128 dense_threshold = u128(2) * cfg.c * gamma * u;

    std::vector<std::size_t> survivors(pairs);
    for (std::size_t i = 0; i < pairs; ++i) survivors[i] = i;

    const Value j_max = floor_log2(2 * u + 1);
    for (Value j = 1; j <= j_max; ++j) {
        std::vector<std::size_t> next;
        next.reserve(survivors.size());
        for (std::size_t i : survivors) {
            if (stats) ++stats->threshold_queries;
            auto res = sumset_size_at_least(nodes[2 * i], nodes[2 * i + 1],
                                            Value{1} << j,
                                            derive_stream(rng.next_u64(), {j, i}),
                                            engine_stats);
            if (res.at_least) next.push_back(i);
        }
        if (stats) ++stats->rounds;
        if (u128(next.size()) * ((Value{1} << j) - 1) >= dense_threshold) {
            DensityVerdict v;
            v.dense = true;
            v.indices = std::move(next);
            v.size_floor = static_cast<Value>(
                (dense_threshold + v.indices.size() - 1) / v.indices.size() + 1);
            return v;
        }
        survivors = std::move(next);
        if (survivors.empty()) break;
    }
    DensityVerdict v;
    v.dense = false;
    v.sparsity_level = 4 * gamma;
    return v;
}

Value sparse_total_size_bound(Value l, Value gamma, Value u, Value c) {
    const Value log_u = u <= 1 ? 0 : ceil_log2(u);
    return l + c * gamma * u * (1 + log_u);
}

IntSet grid_approximation(Value w, Value v, Value delta) {
    if (w > v) throw std::invalid_argument("grid_approximation: w > v");
    if (delta == 0) throw std::invalid_argument("grid_approximation: delta must be positive");
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>((v - w) / delta) + 1);
    for (Value j = 0; j <= (v - w) / delta; ++j) out.push_back(w + j * delta);
    return IntSet::from_sorted(std::move(out), v);
}

}  // namespace ssapx
