#include "ssapx/witness.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ssapx {

namespace {

// {0, ms} plus the k-2 smallest other elements of `pool`.
IntSet trim_keeping_ends(const IntSet& pool, Value ms, Value k, Value universe) {
    std::vector<Value> out{0, ms};
    if (ms == 0) out.pop_back();
    for (Value v : pool) {
        if (out.size() >= static_cast<std::size_t>(k)) break;
        if (v == 0 || v == ms) continue;
        out.push_back(v);
    }
    if (out.size() != static_cast<std::size_t>(k))
        throw std::logic_error("partial_sumset: could not assemble k elements");
    return IntSet::from_values(std::move(out), universe);
}

}  // namespace

PartialSumset partial_sumset(const IntSet& a, const IntSet& b, Value k,
                             Stream rng, EngineStats* stats) {
    if (a.empty() || b.empty() || !a.contains(0) || !b.contains(0))
        throw std::invalid_argument("partial_sumset: inputs must contain 0");
    if (k < 1) throw std::invalid_argument("partial_sumset: k must be >= 1");
    const Value ms = a.max() + b.max();
    const Value universe = ms;
    if (k == 1) {
        if (ms != 0) throw std::invalid_argument("partial_sumset: k=1 needs max sum 0");
        return {IntSet::singleton(0), 1};
    }
    const std::uint64_t seed = rng.next_u64();

    if (a.size() >= k) {
        // A itself (plus the max sum) is already a large enough subset of A+B.
        return {trim_keeping_ends(a, ms, k, universe), k};
    }

    // Smallest prefix of B whose sumset with A has at least k elements.
    auto prefix = [&](std::size_t i) {
        std::vector<Value> v(b.values().begin(), b.values().begin() + i);
        return IntSet::from_sorted(std::move(v), b.universe_bound());
    };
    std::size_t lo = 1, hi = b.size();
    {
        auto full = sumset_size_at_least(a, b, k, derive_stream(seed, {0}), stats);
        if (!full.at_least)
            throw std::logic_error("partial_sumset: k exceeds |A+B|");
    }
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto res = sumset_size_at_least(a, prefix(mid), k,
                                        derive_stream(seed, {1, mid}), stats);
        if (res.at_least)
            hi = mid;
        else
            lo = mid + 1;
    }
    IntSet s = sparse_sumset(a, prefix(lo), derive_stream(seed, {2}), stats);
    assert(s.size() >= k);
    return {trim_keeping_ends(s, ms, k, universe), k};
}

PartialLevelResult compute_partial_level(const Level& level, const PipelineConfig& cfg,
                                         Stream rng, EngineStats* engine,
                                         PipelineStats* stats) {
    if (!level.rounded)
        throw std::logic_error("compute_partial_level: level must be rounded first");
    if (level.nodes.size() < 2 || level.nodes.size() % 2 != 0)
        throw std::logic_error("compute_partial_level: need an even number of nodes");

    const Value scale = Value{2} << level.height;
    const Value u_density = 2 * level.inv_eps;
    const Value gamma = tree::gamma_for(level.leaf_count, level.beta);

    std::vector<IntSet> scaled;
    scaled.reserve(level.nodes.size());
    for (const auto& node : level.nodes) {
        std::vector<Value> v;
        v.reserve(node.size());
        for (Value x : node) v.push_back(x / scale);
        scaled.push_back(IntSet::from_sorted(std::move(v), u_density));
    }

    const std::uint64_t root_seed = rng.next_u64();
    PartialLevelResult out;
    out.verdict = estimate_density(scaled, gamma, u_density, cfg.density,
                                   derive_stream(root_seed, {0}), engine,
                                   stats ? &stats->density : nullptr);
    if (stats) ++stats->levels_computed;

    Level next;
    next.height = level.height + 1;
    next.leaf_count = level.leaf_count;
    next.inv_eps = level.inv_eps;
    next.beta = level.beta;
    next.coverage_top = level.coverage_top;
    next.clip_limit = level.clip_limit;
    next.err_cum = level.err_cum;
    next.rounded = false;
    next.nodes.reserve(scaled.size() / 2);

    auto scale_back = [&](const IntSet& s) {
        std::vector<Value> back;
        back.reserve(s.size());
        for (Value x : s) back.push_back(x * scale);
        return IntSet::from_sorted(std::move(back), next.universe());
    };

    if (!out.verdict.dense) {
        std::size_t total_size = 0;
        for (std::size_t i = 0; i + 1 < scaled.size(); i += 2) {
            IntSet b = sumset(scaled[i], scaled[i + 1], cfg.sumset,
                              derive_stream(root_seed, {1, i}), engine);
            total_size += b.size();
            next.nodes.push_back(tree::clip_node(scale_back(b), next.clip_limit));
        }
        const Value bound = sparse_total_size_bound(scaled.size() / 2, 4 * gamma,
                                                    u_density, cfg.density.c);
        if (total_size > bound)
            throw std::logic_error("compute_partial_level: sparse level exceeded size bound");
        out.next = std::move(next);
        return out;
    }

    if (stats) stats->dense_fired = true;
    std::vector<bool> in_i(scaled.size() / 2, false);
    for (std::size_t i : out.verdict.indices) in_i[i] = true;
    std::size_t dense_total = 0;
    for (std::size_t i = 0; i + 1 < scaled.size(); i += 2) {
        const IntSet& sa = scaled[i];
        const IntSet& sb = scaled[i + 1];
        if (in_i[i / 2]) {
            PartialSumset ps = partial_sumset(sa, sb, out.verdict.size_floor,
                                              derive_stream(root_seed, {2, i}), engine);
            dense_total += ps.h.size();
            next.nodes.push_back(tree::clip_node(scale_back(ps.h), next.clip_limit));
        } else {
            std::vector<Value> two{0, sa.max() + sb.max()};
            if (two[1] == 0) two.pop_back();
            dense_total += two.size();
            next.nodes.push_back(scale_back(IntSet::from_values(std::move(two), u_density)));
        }
    }
    // Exact size identity of the partial level.
    const std::size_t pairs = scaled.size() / 2;
    const std::size_t expect = (pairs - out.verdict.indices.size()) * 2 +
                               out.verdict.indices.size() *
                                   static_cast<std::size_t>(out.verdict.size_floor);
    if (dense_total > expect)
        throw std::logic_error("compute_partial_level: partial level size breach");
    out.next = std::move(next);
    return out;
}

namespace {

struct TraceBuilder {
    TraceTree tree;

    std::vector<int> add_leaves(
        const Level& lv,
        const std::vector<std::vector<std::pair<Value, std::uint32_t>>>& leaf_values) {
        std::vector<int> ids;
        ids.reserve(lv.nodes.size());
        for (std::size_t i = 0; i < lv.nodes.size(); ++i) {
            TraceTree::Node n;
            n.kind = TraceTree::Kind::leaf;
            n.set = lv.nodes[i].values();
            n.leaf_item.assign(n.set.size(), TraceTree::kNoItem);
            for (const auto& [val, item] : leaf_values[i]) {
                auto it = std::lower_bound(n.set.begin(), n.set.end(), val);
                assert(it != n.set.end() && *it == val);
                std::size_t idx = static_cast<std::size_t>(it - n.set.begin());
                if (n.leaf_item[idx] == TraceTree::kNoItem) n.leaf_item[idx] = item;
            }
            ids.push_back(tree.add(std::move(n)));
        }
        return ids;
    }

    // Records the rounding map of round_level applied to `before`.
    std::vector<int> add_rounds(const Level& before_rounding, const Level& after,
                                const std::vector<int>& children) {
        std::vector<int> ids;
        ids.reserve(after.nodes.size());
        const Value step = Value{2} << before_rounding.height;
        for (std::size_t i = 0; i < after.nodes.size(); ++i) {
            TraceTree::Node n;
            n.kind = TraceTree::Kind::round;
            n.child_a = children[i];
            n.set = after.nodes[i].values();
            n.pre.assign(n.set.size(), 0);
            std::vector<bool> seen(n.set.size(), false);
            for (Value v : before_rounding.nodes[i]) {
                Value r = (v + step - 1) / step * step;
                auto it = std::lower_bound(n.set.begin(), n.set.end(), r);
                assert(it != n.set.end() && *it == r);
                std::size_t idx = static_cast<std::size_t>(it - n.set.begin());
                if (!seen[idx]) {
                    n.pre[idx] = v;  // smallest pre-image wins
                    seen[idx] = true;
                }
            }
            ids.push_back(tree.add(std::move(n)));
        }
        return ids;
    }

    std::vector<int> add_pairs(const Level& next, const std::vector<int>& children,
                               const DensityVerdict& verdict) {
        std::vector<int> ids;
        ids.reserve(next.nodes.size());
        for (std::size_t i = 0; i < next.nodes.size(); ++i) {
            TraceTree::Node n;
            n.kind = verdict.dense ? TraceTree::Kind::partial : TraceTree::Kind::sum;
            n.child_a = children[2 * i];
            n.child_b = children[2 * i + 1];
            n.set = next.nodes[i].values();
            ids.push_back(tree.add(std::move(n)));
        }
        return ids;
    }

    std::vector<int> add_unions(const Level& merged,
                                const std::vector<std::vector<int>>& rep_ids,
                                const std::vector<std::vector<IntSet>>& rep_sets) {
        std::vector<int> ids;
        ids.reserve(merged.nodes.size());
        for (std::size_t slot = 0; slot < merged.nodes.size(); ++slot) {
            TraceTree::Node n;
            n.kind = TraceTree::Kind::union_node;
            for (std::size_t j = 0; j < rep_ids.size(); ++j)
                n.union_children.push_back(rep_ids[j][slot]);
            n.set = merged.nodes[slot].values();
            n.union_tag.assign(n.set.size(), 0);
            for (std::size_t idx = 0; idx < n.set.size(); ++idx) {
                for (std::size_t j = 0; j < rep_sets.size(); ++j) {
                    if (rep_sets[j][slot].contains(n.set[idx])) {
                        n.union_tag[idx] = static_cast<std::uint32_t>(j);
                        break;  // smallest repetition index wins
                    }
                }
            }
            ids.push_back(tree.add(std::move(n)));
        }
        return ids;
    }
};

}  // namespace

WitnessRun run_witness_pipeline(const std::vector<Value>& items, Value beta,
                                Value inv_eps, const PipelineConfig& cfg, Stream rng,
                                EngineStats* engine, PipelineStats* stats,
                                Value coverage_top) {
    if (beta < 1 || inv_eps < 2)
        throw std::invalid_argument("run_witness_pipeline: bad beta or accuracy");
    if (items.empty())
        throw std::invalid_argument("run_witness_pipeline: empty window instance");
    const Value cov = coverage_top ? std::min(coverage_top, 2 * beta * inv_eps)
                                   : 2 * beta * inv_eps;
    u128 total = 0;
    for (Value v : items) total += v;
    const u128 need = std::min<u128>(u128(4) * beta * inv_eps, u128(2) * cov);
    if (total < need)
        throw std::invalid_argument("run_witness_pipeline: total sum below window requirement");

    const std::uint64_t qstar_inv =
        cfg.qstar_inv ? cfg.qstar_inv
                      : (items.size() + inv_eps) * (items.size() + inv_eps);
    const std::uint64_t root_seed = rng.next_u64();
    PartitionFamily family = modified_color_coding(
        items, beta, inv_eps, qstar_inv, derive_stream(root_seed, {0}),
        static_cast<Value>(need));
    const tree::Layout layout = tree::plan_layout(family);
    const Value bottom_heights = layout.bottom_heights();
    const std::size_t reps = family.small_path ? 1 : family.params.r;

    TraceBuilder tb;
    bool any_dense = false;

    std::vector<std::vector<IntSet>> rep_roots(reps);
    std::vector<std::vector<int>> rep_root_ids(reps);
    std::vector<std::vector<std::pair<Value, std::uint32_t>>> leaf_values;
    Value bottom_err = 0;
    Value clip_lim = 0;
    for (std::size_t j = 0; j < reps; ++j) {
        Level lv = level_zero(family, j, items, beta, inv_eps, cov, layout, &leaf_values);
        if (cfg.check_invariants) tree::check_level(lv);
        clip_lim = lv.clip_limit;
        std::vector<int> ids = tb.add_leaves(lv, leaf_values);
        for (Value h = 0; h < bottom_heights; ++h) {
            Level before = lv;
            round_level(lv);
            ids = tb.add_rounds(before, lv, ids);
            PartialLevelResult res = compute_partial_level(
                lv, cfg, derive_stream(root_seed, {1, j, h}), engine, stats);
            any_dense |= res.verdict.dense;
            lv = std::move(res.next);
            if (cfg.check_invariants) tree::check_level(lv);
            ids = tb.add_pairs(lv, ids, res.verdict);
        }
        rep_roots[j] = lv.nodes;
        rep_root_ids[j] = std::move(ids);
        bottom_err = lv.err_cum;
    }

    Level top;
    top.height = static_cast<std::uint32_t>(bottom_heights);
    top.leaf_count = layout.leaf_count();
    top.inv_eps = inv_eps;
    top.beta = beta;
    top.coverage_top = cov;
    top.clip_limit = clip_lim;
    top.err_cum = bottom_err;
    top.nodes.reserve(layout.groups_padded);
    for (std::uint64_t slot = 0; slot < layout.groups_padded; ++slot) {
        std::vector<Value> merged;
        for (std::size_t j = 0; j < reps; ++j) {
            const auto& s = rep_roots[j][slot];
            merged.insert(merged.end(), s.begin(), s.end());
        }
        top.nodes.push_back(IntSet::from_values(std::move(merged), top.universe()));
    }
    if (cfg.check_invariants) tree::check_level(top);
    std::vector<int> ids = tb.add_unions(top, rep_root_ids, rep_roots);

    while (top.nodes.size() > 1) {
        Level before = top;
        round_level(top);
        ids = tb.add_rounds(before, top, ids);
        PartialLevelResult res = compute_partial_level(
            top, cfg, derive_stream(root_seed, {2, top.height}), engine, stats);
        any_dense |= res.verdict.dense;
        top = std::move(res.next);
        if (cfg.check_invariants) tree::check_level(top);
        ids = tb.add_pairs(top, ids, res.verdict);
    }

    WitnessRun run;
    run.values.window_lo = beta * inv_eps;
    run.values.window_hi = 2 * beta * inv_eps;
    run.values.delta_cert = top.err_cum + (any_dense ? 2 * beta : 0);
    run.values.provenance = ValueSet::Provenance::tree_root;
    Value lo = run.values.window_lo > run.values.delta_cert
                   ? run.values.window_lo - run.values.delta_cert
                   : 0;
    run.values.elements = top.nodes[0].clipped(lo, cov + run.values.delta_cert);
    run.trace = std::move(tb.tree);
    run.trace.root = ids[0];
    run.trace.delta_cert = run.values.delta_cert;
    return run;
}

std::vector<std::uint32_t> backtrack(const TraceTree& trace, Value s) {
    if (trace.root < 0) throw std::logic_error("backtrack: empty trace");
    std::vector<std::uint32_t> items;
    std::vector<std::pair<int, Value>> stack{{trace.root, s}};
    {
        const auto& root = trace.node(trace.root);
        if (!std::binary_search(root.set.begin(), root.set.end(), s))
            throw std::invalid_argument("backtrack: value not in the root set");
    }
    while (!stack.empty()) {
        auto [id, v] = stack.back();
        stack.pop_back();
        const auto& n = trace.node(id);
        auto index_of = [&](Value val) {
            auto it = std::lower_bound(n.set.begin(), n.set.end(), val);
            if (it == n.set.end() || *it != val)
                throw std::logic_error("backtrack: value missing from node set");
            return static_cast<std::size_t>(it - n.set.begin());
        };
        switch (n.kind) {
            case TraceTree::Kind::leaf: {
                std::size_t idx = index_of(v);
                if (v == 0) break;  // empty contribution
                if (n.leaf_item[idx] == TraceTree::kNoItem)
                    throw std::logic_error("backtrack: leaf value without item");
                items.push_back(n.leaf_item[idx]);
                break;
            }
            case TraceTree::Kind::round: {
                stack.emplace_back(n.child_a, n.pre[index_of(v)]);
                break;
            }
            case TraceTree::Kind::union_node: {
                std::size_t idx = index_of(v);
                stack.emplace_back(n.union_children[n.union_tag[idx]], v);
                break;
            }
            case TraceTree::Kind::sum:
            case TraceTree::Kind::partial: {
                index_of(v);  // assert membership
                const auto& la = trace.node(n.child_a).set;
                const auto& lb = trace.node(n.child_b).set;
                const auto& small = la.size() <= lb.size() ? la : lb;
                const auto& big = la.size() <= lb.size() ? lb : la;
                bool found = false;
                for (Value x : small) {
                    if (x > v) break;
                    if (std::binary_search(big.begin(), big.end(), v - x)) {
                        Value a_part = la.size() <= lb.size() ? x : v - x;
                        Value b_part = v - a_part;
                        stack.emplace_back(n.child_a, a_part);
                        stack.emplace_back(n.child_b, b_part);
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw std::logic_error("backtrack: no decomposition at sum node");
                break;
            }
        }
    }
    std::sort(items.begin(), items.end());
    return items;
}

}  // namespace ssapx
