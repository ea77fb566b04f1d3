#include "ssapx/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ssapx/color_coding.hpp"
#include "ssapx/driver.hpp"
#include "ssapx/gen.hpp"
#include "ssapx/levels.hpp"
#include "ssapx/rng.hpp"
#include "ssapx/sumset.hpp"
#include "ssapx/witness.hpp"

namespace ssapx {

namespace oracle {

IntSet powerset_sums(const std::vector<Value>& items, Value cap) {
    if (items.size() > 24)
        throw std::length_error("powerset_sums: too many items for enumeration");
    std::vector<Value> sums;
    sums.reserve(std::size_t{1} << items.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << items.size()); ++mask) {
        u128 s = 0;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (std::size_t{1} << i)) s += items[i];
        if (s <= cap) sums.push_back(static_cast<Value>(s));
    }
    return IntSet::from_values(std::move(sums), cap);
}

bool check_two_sided(const IntSet& approx, const IntSet& exact, Value lo, Value hi,
                     Value delta) {
    auto near = [&](const IntSet& s, Value v) {
        const auto& e = s.values();
        auto it = std::lower_bound(e.begin(), e.end(), v);
        if (it != e.end() && *it - v <= delta) return true;
        if (it != e.begin() && v - *(it - 1) <= delta) return true;
        return false;
    };
    for (Value s : exact) {
        if (s < lo || s > hi) continue;
        if (!near(approx, s)) return false;
    }
    for (Value a : approx) {
        if (!near(exact, a)) return false;
    }
    return true;
}

}  // namespace oracle

namespace {

IntSet random_subset(Stream& rng, Value universe, std::size_t size, bool with_zero) {
    std::vector<Value> v;
    if (with_zero) v.push_back(0);
    while (v.size() < size) v.push_back(rng.uniform(universe + 1));
    return IntSet::from_values(std::move(v), universe);
}

void tally(SuiteResult& r, bool ok) {
    ++r.checks;
    if (!ok) ++r.failures;
}

}  // namespace

SuiteResult suite_sumset_differential(std::size_t pairs, std::uint64_t seed) {
    SuiteResult r{"sumset-differential"};
    std::size_t min_out = ~std::size_t{0}, max_out = 0;
    for (std::size_t t = 0; t < pairs; ++t) {
        Stream rng = derive_stream(seed, {1, t});
        const Value u = Value{1} << (2 + rng.uniform(19));  // universes up to 2^20
        IntSet a, b;
        if (t == 0) {
            // pinned span endpoints: a singleton output and a 10^4-sized one
            a = IntSet::singleton(0);
            b = IntSet::singleton(0);
        } else if (t == 1) {
            std::vector<Value> va;
            for (Value i = 0; i <= 5000; ++i) va.push_back(i);
            a = IntSet::from_sorted(va, 5000);
            b = a;
        } else
        switch (rng.uniform(3)) {
            case 0: {  // small random supports
                a = random_subset(rng, u, 1 + rng.uniform(24), false);
                b = random_subset(rng, u, 1 + rng.uniform(24), false);
                break;
            }
            case 1: {  // arithmetic progressions: dense overlapping sums
                const Value step = 1 + rng.uniform(std::max<Value>(u / 64, 1));
                const Value len = 2 + rng.uniform(64);
                std::vector<Value> va, vb;
                for (Value i = 0; i < len && i * step <= u; ++i) va.push_back(i * step);
                for (Value i = 0; i < len && i * step <= u; ++i) vb.push_back(i * step);
                a = IntSet::from_values(std::move(va), u);
                b = IntSet::from_values(std::move(vb), u);
                break;
            }
            default: {  // larger supports, occasionally very large outputs
                const std::size_t cap = t % 97 == 0 ? 128 : 48;
                a = random_subset(rng, u, 2 + rng.uniform(cap), false);
                b = random_subset(rng, u, 2 + rng.uniform(cap), false);
                break;
            }
        }
        IntSet d = dense_sumset(a, b);
        IntSet s = sparse_sumset(a, b, derive_stream(seed, {2, t}));
        tally(r, d == s);
        min_out = std::min(min_out, d.size());
        max_out = std::max(max_out, d.size());
    }
    r.note = "output sizes " + std::to_string(min_out) + ".." + std::to_string(max_out);
    return r;
}

SuiteResult suite_size_threshold(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"size-threshold"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {3, t});
        const Value u = Value{1} << (2 + rng.uniform(12));
        IntSet a = random_subset(rng, u, 1 + rng.uniform(20), false);
        IntSet b = random_subset(rng, u, 1 + rng.uniform(20), false);
        const std::size_t exact = dense_sumset(a, b).size();
        Value k;
        switch (rng.uniform(4)) {
            case 0: k = exact; break;
            case 1: k = exact + 1; break;
            case 2: k = exact > 1 ? exact - 1 : 1; break;
            default: k = 1 + rng.uniform(2 * exact); break;
        }
        auto res = sumset_size_at_least(a, b, k, derive_stream(seed, {4, t}));
        tally(r, res.at_least == (exact >= k));
        if (res.full_sumset) tally(r, res.full_sumset->size() == exact);
    }
    return r;
}

SuiteResult suite_mod_claim(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"mod-doubling-claim"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {5, t});
        const Value u = Value{1} << (3 + rng.uniform(12));
        IntSet a = random_subset(rng, u, 1 + rng.uniform(24), false);
        IntSet b = random_subset(rng, u, 1 + rng.uniform(24), false);
        const Value k = 1 + rng.uniform(u);
        const std::size_t big =
            dense_sumset(mod_reduce(a, 2 * k), mod_reduce(b, 2 * k)).size();
        const std::size_t small =
            dense_sumset(mod_reduce(a, k), mod_reduce(b, k)).size();
        tally(r, big <= 3 * small);
    }
    return r;
}

SuiteResult suite_approx_contract(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"approx-contract"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {6, t});
        const Value inv_eps = Value{2} << rng.uniform(4);  // 2..32
        const Value u = 2 * inv_eps * (1 + rng.uniform(16));
        IntSet a = random_subset(rng, u, 1 + rng.uniform(12), false);
        IntSet b = random_subset(rng, u, 1 + rng.uniform(12), false);
        IntSet exact = dense_sumset(a, b);
        auto ap = approx_sumset_pair(a, b, u, inv_eps);
        tally(r, ap.cert <= u / inv_eps);
        tally(r, ap.set.size() <= 4 * inv_eps + 1);
        tally(r, oracle::check_two_sided(ap.set, exact, 0, u, u / inv_eps));

        const std::size_t l = 1 + rng.uniform(6);
        std::vector<IntSet> sets;
        IntSet folded = IntSet::singleton(0);
        for (std::size_t i = 0; i < l; ++i) {
            sets.push_back(random_subset(rng, u / l, 1 + rng.uniform(8), true));
            folded = dense_sumset(folded, sets.back());
        }
        auto am = approx_sumset_many(sets, u, inv_eps);
        tally(r, am.cert <= u / inv_eps);
        tally(r, am.set.size() <= 8 * inv_eps + 1);
        tally(r, oracle::check_two_sided(am.set, folded, 0, u, u / inv_eps));
    }
    return r;
}

SuiteResult suite_density(std::size_t trials, std::uint64_t seed, Value c) {
    SuiteResult r{"density-soundness"};
    DensityConfig cfg{c};
    std::size_t dense_seen = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {8, t});
        const Value u = 2 + rng.uniform(63);  // u <= 64
        const Value gamma = 1 + rng.uniform(3);
        std::vector<IntSet> nodes;
        if (t % 3 == 0) {
            // Enough full-interval nodes to force a dense verdict at j = 1.
            const Value pairs = 2 * c * gamma * u + 1 + rng.uniform(8);
            for (Value i = 0; i < 2 * pairs; ++i) {
                std::vector<Value> all;
                for (Value v = 0; v <= u; ++v) all.push_back(v);
                nodes.push_back(IntSet::from_sorted(std::move(all), u));
            }
        } else {
            const std::size_t l = 2 * (1 + rng.uniform(8));
            for (std::size_t i = 0; i < l; ++i)
                nodes.push_back(random_subset(rng, u, 1 + rng.uniform(u), true));
        }
        DensityStats stats;
        auto verdict = estimate_density(nodes, gamma, u, cfg,
                                        derive_stream(seed, {9, t}), nullptr, &stats);
        std::vector<Value> sizes;
        for (std::size_t i = 0; i + 1 < nodes.size(); i += 2)
            sizes.push_back(dense_sumset(nodes[i], nodes[i + 1]).size());
        if (verdict.dense) {
            ++dense_seen;
            for (std::size_t i : verdict.indices)
                tally(r, sizes[i] >= verdict.size_floor);
            tally(r, is_gamma_dense_bruteforce(sizes, gamma, 2 * u, c));
        } else {
            tally(r, !is_gamma_dense_bruteforce(sizes, 4 * gamma, 2 * u, c));
        }
        const Value j_max = floor_log2(2 * u + 1);
        tally(r, stats.threshold_queries <= j_max * (nodes.size() / 2));
    }
    r.note = "dense verdicts: " + std::to_string(dense_seen) + "/" + std::to_string(trials);
    return r;
}

SuiteResult suite_color_coding(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"color-coding-structure"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {10, t});
        const Value inv_eps = 8 << rng.uniform(3);
        const Value beta = Value{1} << rng.uniform(4);
        const std::size_t n = 1 + rng.uniform(24);
        std::vector<Value> items;
        u128 total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back(inv_eps + rng.uniform(inv_eps + 1));
            total += items.back();
        }
        if (total < u128(4) * beta * inv_eps) continue;

        PartitionFamily fam = modified_color_coding(items, beta, inv_eps, 1u << 20,
                                                    derive_stream(seed, {11, t}));
        PartitionFamily fam2 = modified_color_coding(items, beta, inv_eps, 1u << 20,
                                                     derive_stream(seed, {11, t}));
        const std::size_t reps = fam.small_path ? 1 : fam.params.r;
        bool det = fam.reps.size() == fam2.reps.size();
        for (std::size_t j = 0; det && j < fam.reps.size(); ++j)
            det = fam.reps[j] == fam2.reps[j];
        tally(r, det);
        for (std::size_t j = 0; j < reps; ++j) {
            std::vector<int> hit(n, 0);
            bool in_range = true;
            for (const auto& [cell, members] : fam.cells(j)) {
                in_range &= cell < fam.params.m * fam.params.g;
                for (auto it : members) {
                    in_range &= it < n;
                    if (it < n) ++hit[it];
                }
            }
            bool cover = in_range;
            for (int h : hit) cover &= (h == 1);
            tally(r, cover);
            tally(r, family_max_sum(fam, items, j) >= u128(4) * beta * inv_eps);
        }
    }
    return r;
}

SuiteResult suite_coverage_stats(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"color-coding-coverage"};
    // Plain color coding at a moderate q so the statistic has teeth.
    const Value k = 4;
    const Value q_inv = 16;
    std::size_t misses = 0, runs = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {12, t});
        const std::size_t n = 8 + rng.uniform(8);
        std::vector<Value> items;
        for (std::size_t i = 0; i < n; ++i) items.push_back(1 + rng.uniform(48));
        std::vector<std::uint32_t> y;
        for (std::size_t i = 0; i < n && y.size() < k; ++i)
            if (rng.bernoulli_half()) y.push_back(static_cast<std::uint32_t>(i));
        u128 target = 0;
        for (auto i : y) target += items[i];

        PartitionFamily fam = color_coding(items, k, q_inv, derive_stream(seed, {13, t}));
        // union over repetitions of the per-group sumsets, then across groups
        Value usum = 0;
        for (Value v : items) usum += v;
        std::vector<IntSet> group_union(fam.params.m, IntSet::singleton(0));
        for (Value j = 0; j < fam.params.r; ++j) {
            std::vector<IntSet> group_set(fam.params.m, IntSet::singleton(0));
            for (const auto& [cell, members] : fam.cells(j)) {
                std::vector<Value> leaf{0};
                for (auto it : members) leaf.push_back(items[it]);
                group_set[cell / fam.params.g] = dense_sumset(
                    group_set[cell / fam.params.g],
                    IntSet::from_values(std::move(leaf), usum));
            }
            for (Value gi = 0; gi < fam.params.m; ++gi) {
                std::vector<Value> merged(group_union[gi].values());
                merged.insert(merged.end(), group_set[gi].begin(), group_set[gi].end());
                group_union[gi] = IntSet::from_values(std::move(merged), usum);
            }
        }
        IntSet reach = IntSet::singleton(0);
        for (const auto& gs : group_union) reach = dense_sumset(reach, gs);
        ++runs;
        if (!reach.contains(static_cast<Value>(target))) ++misses;
    }
    // Binomial tolerance: expected misses <= q*N; allow 2q*N plus 3 sigma.
    const double q = 1.0 / static_cast<double>(q_inv);
    const double limit = 2.0 * q * runs + 3.0 * std::sqrt(runs * q * (1 - q));
    tally(r, static_cast<double>(misses) <= limit);
    r.checks += runs;
    r.note = "misses " + std::to_string(misses) + "/" + std::to_string(runs) +
             " (limit " + std::to_string(static_cast<int>(limit)) + ")";
    return r;
}

namespace {

struct TinyWindow {
    std::vector<Value> items;
    Value beta;
    Value inv_eps;
};

TinyWindow random_window_instance(Stream& rng) {
    TinyWindow w;
    w.inv_eps = 8 << rng.uniform(3);   // 8..32
    w.beta = Value{1} << rng.uniform(3);  // 1..4
    const std::size_t n = 1 + rng.uniform(12);
    u128 total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w.items.push_back(w.inv_eps + rng.uniform(w.inv_eps + 1));
        total += w.items.back();
    }
    while (total < u128(4) * w.beta * w.inv_eps) {
        w.items.push_back(2 * w.inv_eps);
        total += 2 * w.inv_eps;
    }
    return w;
}

}  // namespace

SuiteResult suite_pipeline_oracle(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"value-pipeline-oracle"};
    PipelineConfig cfg;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {14, t});
        TinyWindow w = random_window_instance(rng);
        ValueSet vs = run_value_pipeline(w.items, w.beta, w.inv_eps, cfg,
                                         derive_stream(seed, {15, t}));
        u128 total = 0;
        for (Value v : w.items) total += v;
        IntSet exact = oracle::powerset_sums(w.items, static_cast<Value>(total));
        tally(r, oracle::check_two_sided(vs.elements, exact, vs.window_lo,
                                         vs.window_hi, vs.delta_cert));
        // Same seed, witness mode: identical values whenever nothing was dense.
        PipelineStats st;
        WitnessRun run = run_witness_pipeline(w.items, w.beta, w.inv_eps, cfg,
                                              derive_stream(seed, {15, t}), nullptr, &st);
        if (!st.dense_fired) tally(r, run.values.elements == vs.elements);
    }
    return r;
}

SuiteResult suite_witness_roundtrip(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"witness-roundtrip"};
    PipelineConfig cfg;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {16, t});
        TinyWindow w = random_window_instance(rng);
        WitnessRun run = run_witness_pipeline(w.items, w.beta, w.inv_eps, cfg,
                                              derive_stream(seed, {17, t}));
        for (Value s : run.values.elements) {
            auto wit = backtrack(run.trace, s);
            std::vector<bool> used(w.items.size(), false);
            bool valid = true;
            u128 sum = 0;
            for (auto idx : wit) {
                if (idx >= w.items.size() || used[idx]) valid = false;
                else {
                    used[idx] = true;
                    sum += w.items[idx];
                }
            }
            const Value s_sum = static_cast<Value>(sum);
            const Value diff = s_sum > s ? s_sum - s : s - s_sum;
            tally(r, valid && diff <= run.values.delta_cert);
        }
    }
    return r;
}

SuiteResult suite_dense_branch(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"dense-branch"};
    std::size_t fired = 0;
    // partial_sumset contract on random inputs
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {18, t});
        const Value u = 8 << rng.uniform(5);
        IntSet a = random_subset(rng, u, 1 + rng.uniform(16), true);
        IntSet b = random_subset(rng, u, 1 + rng.uniform(16), true);
        IntSet full = dense_sumset(a, b);
        const Value k = 2 + rng.uniform(full.size() > 2 ? full.size() - 2 : 1);
        if (k > full.size()) continue;
        PartialSumset ps = partial_sumset(a, b, k, derive_stream(seed, {19, t}));
        bool subset = true;
        for (Value v : ps.h) subset &= full.contains(v);
        tally(r, subset);
        tally(r, ps.h.size() == k);
        tally(r, ps.h.contains(0) && ps.h.contains(a.max() + b.max()));
    }
    // Forced-dense pipeline runs at c = 1: many mid-height pairs over a small
    // accuracy fill their sumsets, so the density estimator must take the
    // partial-level branch, and backtracking must stay sound through it.
    PipelineConfig cfg;
    cfg.density.c = 1;
    const std::size_t forced = std::max<std::size_t>(trials / 32, 2);
    for (std::size_t t = 0; t < forced; ++t) {
        Stream rng = derive_stream(seed, {20, t});
        const Value inv_eps = 16;
        const Value beta = 512;
        std::vector<Value> items;
        const std::size_t n = 1400;
        for (std::size_t i = 0; i < n; ++i)
            items.push_back(inv_eps + rng.uniform(inv_eps + 1));
        PipelineStats st;
        WitnessRun run = run_witness_pipeline(items, beta, inv_eps, cfg,
                                              derive_stream(seed, {21, t}), nullptr, &st);
        tally(r, st.dense_fired);
        if (st.dense_fired) ++fired;
        for (Value s : run.values.elements) {
            auto wit = backtrack(run.trace, s);
            u128 sum = 0;
            for (auto idx : wit) sum += items[idx];
            const Value s_sum = static_cast<Value>(sum);
            const Value diff = s_sum > s ? s_sum - s : s - s_sum;
            tally(r, diff <= run.values.delta_cert);
        }
    }
    r.note = "dense fired in " + std::to_string(fired) + "/" + std::to_string(forced) +
             " forced runs";
    return r;
}

SuiteResult suite_reduction(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"reduction-chain"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {22, t});
        const std::size_t n = 1 + rng.uniform(12);
        std::vector<Value> items;
        u128 sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back(1 + rng.uniform(1 << 10));
            sum += items.back();
        }
        const Value cap = static_cast<Value>(sum);
        IntSet ps = oracle::powerset_sums(items, cap);
        IntSet dp = exact_subset_sums(items, cap);
        tally(r, ps == dp);

        // mirror: exact complement symmetry on the oracle itself
        ValueSet direct;
        direct.elements = dp.clipped(0, cap / 2);
        direct.window_lo = 0;
        direct.window_hi = cap / 2;
        direct.delta_cert = 0;
        ValueSet mirrored = mirror_upper_half(direct, cap);
        bool mirror_ok = true;
        for (Value v : mirrored.elements) mirror_ok &= dp.contains(v);
        tally(r, mirror_ok);
        ValueSet twice = mirror_upper_half(mirrored, cap);
        tally(r, twice.elements == direct.elements);

        // preprocessing invariants
        const Value inv_eps = 8;
        const Value target = std::max<Value>(cap / 2, 1);
        PrepResult prep = preprocess_small_items(items, inv_eps, target);
        bool small_ok = true;
        u128 prep_sum = 0;
        for (std::size_t i = 0; i < prep.items.size(); ++i) {
            small_ok &= u128(prep.items[i]) * inv_eps >= target ||
                        prep.origin[i].size() == 1;
            // merged groups stay below 2*eps*t
            if (prep.origin[i].size() > 1)
                small_ok &= u128(prep.items[i]) * inv_eps < 2 * u128(target);
            prep_sum += prep.items[i];
        }
        u128 deleted_sum = 0;
        for (auto d : prep.deleted) deleted_sum += items[d];
        small_ok &= deleted_sum * inv_eps < u128(target);
        small_ok &= prep_sum + deleted_sum == sum;
        tally(r, small_ok);
    }
    return r;
}

SuiteResult suite_end_to_end(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"weak-approx-end-to-end"};
    const double epses[] = {0.25, 0.125, 0.0625, 1.0 / 64};
    const std::size_t weights[] = {5, 3, 2, 1};
    std::size_t wi = 0, wc = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {23, t});
        const std::size_t n = 1 + rng.uniform(20);
        std::vector<Value> items;
        u128 sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back(1 + rng.uniform(Value{1} << 20));
            sum += items.back();
        }
        const Value t_target = 1 + rng.uniform(static_cast<Value>(sum));
        const double eps = epses[wi];
        if (++wc >= weights[wi]) {
            wc = 0;
            wi = (wi + 1) % 4;
        }
        Instance inst{items, t_target, eps};
        SolveOptions opt;
        opt.seed = derive_stream(seed, {24, t}).next_u64();
        SolveResult res = solve_weak_subset_sum(inst, opt);

        std::vector<Value> usable;
        for (Value v : items)
            if (v <= t_target) usable.push_back(v);
        Value opt_val = 0;
        if (!usable.empty()) opt_val = exact_subset_sums(usable, t_target).max();

        u128 wsum = 0;
        std::vector<bool> usedw(items.size(), false);
        bool wit_ok = true;
        for (auto w : res.witness) {
            if (w >= items.size() || usedw[w]) wit_ok = false;
            else {
                usedw[w] = true;
                wsum += items[w];
            }
        }
        wit_ok &= (wsum == res.value);
        const bool upper_ok = res.value <= res.guarantee_upper;
        const bool lower_ok =
            static_cast<double>(res.value) >= (1.0 - eps) * static_cast<double>(opt_val) - 1e-9;
        tally(r, wit_ok && upper_ok && lower_ok && res.certified);
    }
    return r;
}

SuiteResult suite_partition(std::size_t trials, std::uint64_t seed) {
    SuiteResult r{"partition-end-to-end"};
    for (std::size_t t = 0; t < trials; ++t) {
        Stream rng = derive_stream(seed, {25, t});
        const std::size_t n = 2 + rng.uniform(18);
        std::vector<Value> items;
        u128 sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back(1 + rng.uniform(Value{1} << 20));
            sum += items.back();
        }
        const double eps = t % 2 == 0 ? 0.125 : 0.25;
        SolveOptions opt;
        opt.seed = derive_stream(seed, {26, t}).next_u64();
        SolveResult res = solve_partition(items, eps, opt);
        const Value half = static_cast<Value>(sum / 2);
        Value opt_val = exact_subset_sums(items, half).max();
        u128 wsum = 0;
        for (auto w : res.witness) wsum += items[w];
        bool ok = wsum == res.value && res.value <= res.guarantee_upper &&
                  static_cast<double>(res.value) >=
                      (1.0 - eps) * static_cast<double>(opt_val) - 1e-9;
        ok &= res.value + res.complement_sum == sum;
        tally(r, ok);
    }
    // Planted perfect splits at eps below 1/(2*total): the returned side must
    // balance exactly.
    for (std::size_t t = 0; t < std::max<std::size_t>(trials / 8, 4); ++t) {
        GenSpec spec;
        spec.n = 4 + 2 * (t % 5);
        spec.max_x = 64;
        spec.dist = GenSpec::Dist::planted_perfect;
        spec.seed = seed + t;
        GenResult inst = generate_instance(spec);
        u128 sum = 0;
        for (Value v : inst.items) sum += v;
        const double eps = 1.0 / (2.0 * static_cast<double>(sum) + 2);
        SolveOptions opt;
        opt.seed = seed + t;
        SolveResult res = solve_partition(inst.items, eps, opt);
        tally(r, res.value == static_cast<Value>(sum / 2));
    }
    return r;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    out.push_back(suite_sumset_differential(1500, seed));
    out.push_back(suite_size_threshold(800, seed));
    out.push_back(suite_mod_claim(1500, seed));
    out.push_back(suite_approx_contract(400, seed));
    out.push_back(suite_density(250, seed, 4));
    out.push_back(suite_color_coding(200, seed));
    out.push_back(suite_coverage_stats(400, seed));
    out.push_back(suite_pipeline_oracle(150, seed));
    out.push_back(suite_witness_roundtrip(120, seed));
    out.push_back(suite_dense_branch(150, seed));
    out.push_back(suite_reduction(250, seed));
    out.push_back(suite_end_to_end(150, seed));
    out.push_back(suite_partition(60, seed));
    return out;
}

}  // namespace ssapx
