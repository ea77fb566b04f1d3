#include "ssapx/levels.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace ssapx {

namespace tree {

Value gamma_for(Value leaf_count, Value beta) {
    return std::max<Value>(4, (4 * leaf_count + beta - 1) / beta);
}

IntSet clip_node(const IntSet& node, Value limit) {
    if (node.empty() || node.max() <= limit) return node;
    std::vector<Value> kept;
    for (Value v : node) {
        if (v <= limit) kept.push_back(v);
    }
    kept.push_back(node.max());  // keep the true maximum so sum-of-maxima survives
    return IntSet::from_sorted(std::move(kept), node.universe_bound());
}

Layout plan_layout(const PartitionFamily& family) {
    Layout lay;
    if (family.small_path) {
        const auto& cells = family.cells(0);
        lay.cells_per_group = 1;
        lay.groups_padded = next_pow2(std::max<Value>(cells.size(), 1));
        lay.group_ids.reserve(lay.groups_padded);
        for (const auto& [cell, members] : cells) lay.group_ids.push_back(cell);
        lay.group_ids.resize(lay.groups_padded, Layout::kPad);
        return lay;
    }
    const Value g = family.params.g;
    std::map<std::uint64_t, Value> cells_in_group;  // group -> max nonempty cells over reps
    for (Value j = 0; j < family.params.r; ++j) {
        std::map<std::uint64_t, Value> cur;
        for (const auto& [cell, members] : family.cells(j)) ++cur[cell / g];
        for (const auto& [grp, cnt] : cur)
            cells_in_group[grp] = std::max(cells_in_group[grp], cnt);
    }
    Value p = 1;
    for (const auto& [grp, cnt] : cells_in_group) p = std::max(p, cnt);
    lay.cells_per_group = next_pow2(p);
    lay.groups_padded = next_pow2(std::max<Value>(cells_in_group.size(), 1));
    for (const auto& [grp, cnt] : cells_in_group) lay.group_ids.push_back(grp);
    lay.group_ids.resize(lay.groups_padded, Layout::kPad);
    return lay;
}

void check_level(const Level& lv) {
    const Value expect_nodes = lv.leaf_count >> lv.height;
    if (lv.nodes.size() != expect_nodes)
        throw std::logic_error("level invariant: node count != leaf_count / 2^h");
    for (const auto& n : lv.nodes) {
        if (n.empty() || n.min() != 0)
            throw std::logic_error("level invariant: node missing 0");
        if (n.max() > lv.universe())
            throw std::logic_error("level invariant: node exceeds universe");
    }
}

}  // namespace tree

namespace {

Value clip_margin(Value leaf_count, Value beta) {
    const Value lg = leaf_count <= 1 ? 0 : ceil_log2(leaf_count);
    return 4 * leaf_count * (lg + 2) + 2 * beta;
}

}  // namespace

Level level_zero(const PartitionFamily& family, std::size_t rep,
                 const std::vector<Value>& items, Value beta, Value inv_eps,
                 Value coverage_top, const tree::Layout& layout,
                 std::vector<std::vector<std::pair<Value, std::uint32_t>>>* leaf_values) {
    Level lv;
    lv.height = 0;
    lv.leaf_count = layout.leaf_count();
    lv.inv_eps = inv_eps;
    lv.beta = beta;
    lv.coverage_top = coverage_top ? coverage_top : 2 * beta * inv_eps;
    lv.clip_limit = lv.coverage_top + clip_margin(lv.leaf_count, beta);
    lv.nodes.reserve(lv.leaf_count);
    if (leaf_values) leaf_values->clear();

    const Value g = family.params.g;
    const auto& cells = family.cells(rep);
    auto emit_leaf = [&](const std::vector<std::uint32_t>* members) {
        std::vector<Value> vals{0};
        std::vector<std::pair<Value, std::uint32_t>> prov;
        if (members) {
            for (std::uint32_t it : *members) {
                vals.push_back(items[it]);
                prov.emplace_back(items[it], it);
            }
        }
        lv.nodes.push_back(IntSet::from_values(std::move(vals), 2 * inv_eps));
        if (leaf_values) leaf_values->push_back(std::move(prov));
    };

    for (std::uint64_t slot = 0; slot < layout.groups_padded; ++slot) {
        const std::uint64_t gid = layout.group_ids[slot];
        Value emitted = 0;
        if (gid != tree::Layout::kPad) {
            if (family.small_path) {
                // One cell per slot, matched by cell index.
                for (const auto& [cell, members] : cells) {
                    if (cell == gid) {
                        emit_leaf(&members);
                        ++emitted;
                        break;
                    }
                }
            } else {
                for (const auto& [cell, members] : cells) {
                    if (cell / g == gid) {
                        emit_leaf(&members);
                        ++emitted;
                    }
                }
            }
        }
        for (; emitted < layout.cells_per_group; ++emitted) emit_leaf(nullptr);
    }
    return lv;
}

void round_level(Level& level) {
    const Value step = Value{2} << level.height;  // 2^(h+1)
    for (auto& node : level.nodes) {
        std::vector<Value> rounded;
        rounded.reserve(node.size());
        for (Value v : node) rounded.push_back((v + step - 1) / step * step);
        node = IntSet::from_values(std::move(rounded), level.universe());
    }
    level.err_cum += level.nodes.size() * step;
    level.rounded = true;
}

AdvanceOutcome advance_level(const Level& level, const PipelineConfig& cfg,
                             Stream rng, EngineStats* engine,
                             PipelineStats* stats) {
    if (!level.rounded)
        throw std::logic_error("advance_level: level must be rounded first");
    if (level.nodes.size() < 2 || level.nodes.size() % 2 != 0)
        throw std::logic_error("advance_level: need an even number of nodes");

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

    AdvanceOutcome out;
    const std::uint64_t root_seed = rng.next_u64();
    out.verdict = estimate_density(scaled, gamma, u_density, cfg.density,
                                   derive_stream(root_seed, {0}), engine,
                                   stats ? &stats->density : nullptr);
    if (stats) ++stats->levels_computed;

    if (out.verdict.dense) {
        if (stats) stats->dense_fired = true;
        ValueSet vs;
        vs.window_lo = level.beta * level.inv_eps;
        vs.window_hi = 2 * level.beta * level.inv_eps;
        vs.delta_cert = level.err_cum + 2 * level.beta;
        vs.provenance = ValueSet::Provenance::dense_grid;
        vs.elements = grid_approximation(vs.window_lo, vs.window_hi, 2 * level.beta);
        out.grid = std::move(vs);
        return out;
    }

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
    std::size_t total_size = 0;
    for (std::size_t i = 0; i + 1 < scaled.size(); i += 2) {
        IntSet b = sumset(scaled[i], scaled[i + 1], cfg.sumset,
                          derive_stream(root_seed, {1, i}), engine);
        total_size += b.size();
        std::vector<Value> back;
        back.reserve(b.size());
        for (Value x : b) back.push_back(x * scale);
        IntSet node = IntSet::from_sorted(std::move(back), next.universe());
        next.nodes.push_back(tree::clip_node(node, next.clip_limit));
    }
    // A sparse verdict certifies the whole collection fits the 4*gamma bound.
    const Value bound = sparse_total_size_bound(scaled.size() / 2, 4 * gamma,
                                                u_density, cfg.density.c);
    if (total_size > bound)
        throw std::logic_error("advance_level: sparse level exceeded size bound");
    out.next = std::move(next);
    return out;
}

ValueSet run_value_pipeline(const std::vector<Value>& items, Value beta,
                            Value inv_eps, const PipelineConfig& cfg, Stream rng,
                            EngineStats* engine, PipelineStats* stats,
                            Value coverage_top) {
    if (beta < 1 || inv_eps < 2)
        throw std::invalid_argument("run_value_pipeline: bad beta or accuracy");
    if (items.empty())
        throw std::invalid_argument("run_value_pipeline: empty window instance");
    const Value cov = coverage_top ? std::min(coverage_top, 2 * beta * inv_eps)
                                   : 2 * beta * inv_eps;
    u128 total = 0;
    for (Value v : items) total += v;
    const u128 need = std::min<u128>(u128(4) * beta * inv_eps, u128(2) * cov);
    if (total < need)
        throw std::invalid_argument("run_value_pipeline: total sum below window requirement");

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

    auto finish_grid = [&](ValueSet vs) {
        Value lo = vs.window_lo > vs.delta_cert ? vs.window_lo - vs.delta_cert : 0;
        vs.elements = vs.elements.clipped(lo, cov + vs.delta_cert);
        return vs;
    };

    std::vector<std::vector<IntSet>> rep_roots(reps);
    Value bottom_err = 0;
    for (std::size_t j = 0; j < reps; ++j) {
        Level lv = level_zero(family, j, items, beta, inv_eps, cov, layout);
        if (cfg.check_invariants) tree::check_level(lv);
        for (Value h = 0; h < bottom_heights; ++h) {
            round_level(lv);
            AdvanceOutcome out = advance_level(lv, cfg, derive_stream(root_seed, {1, j, h}),
                                               engine, stats);
            if (out.grid) return finish_grid(std::move(*out.grid));
            lv = std::move(*out.next);
            if (cfg.check_invariants) tree::check_level(lv);
        }
        rep_roots[j] = std::move(lv.nodes);
        bottom_err = lv.err_cum;
    }

    // Merge the repetitions by union, per group slot.
    Level top;
    top.height = static_cast<std::uint32_t>(bottom_heights);
    top.leaf_count = layout.leaf_count();
    top.inv_eps = inv_eps;
    top.beta = beta;
    top.coverage_top = cov;
    top.clip_limit = cov + clip_margin(top.leaf_count, beta);
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

    while (top.nodes.size() > 1) {
        round_level(top);
        AdvanceOutcome out = advance_level(
            top, cfg, derive_stream(root_seed, {2, top.height}), engine, stats);
        if (out.grid) return finish_grid(std::move(*out.grid));
        top = std::move(*out.next);
        if (cfg.check_invariants) tree::check_level(top);
    }

    ValueSet vs;
    vs.window_lo = beta * inv_eps;
    vs.window_hi = 2 * beta * inv_eps;
    vs.delta_cert = top.err_cum;
    vs.provenance = ValueSet::Provenance::tree_root;
    Value lo = vs.window_lo > vs.delta_cert ? vs.window_lo - vs.delta_cert : 0;
    vs.elements = top.nodes[0].clipped(lo, cov + vs.delta_cert);
    return vs;
}

}  // namespace ssapx
