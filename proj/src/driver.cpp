#include "ssapx/driver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ssapx {

namespace {

constexpr Value kExactRegimeSlack = 8;   // floor(eps*t) below this: exact DP path
constexpr Value kCAdjCap = 1024;
constexpr Value kMaxInvEps = Value{1} << 26;
constexpr std::uint32_t kNoPos = ~0u;

Value eps_slack(double eps, Value t) {
    long double s = static_cast<long double>(eps) * static_cast<long double>(t);
    if (s < 0) return 0;
    return static_cast<Value>(std::floor(s));
}

Value default_c_adj(double eps) {
    const double lg = std::max(1.0, std::log2(1.0 / eps));
    const double c = 8.0 * std::ceil(lg * lg * lg);
    return static_cast<Value>(std::min<double>(c, static_cast<double>(kCAdjCap)));
}

}  // namespace

TrivialCheck trivial_check(const std::vector<Value>& items, Value target) {
    u128 total = 0;
    for (Value v : items) {
        if (v > target) throw std::invalid_argument("trivial_check: item above target");
        total += v;
    }
    TrivialCheck r;
    if (total <= target) {
        r.exact = true;
        r.sum = static_cast<Value>(total);
        r.subset.resize(items.size());
        for (std::size_t i = 0; i < items.size(); ++i)
            r.subset[i] = static_cast<std::uint32_t>(i);
        return r;
    }
    Value run = 0;
    std::vector<std::uint32_t> taken, skipped;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (run + items[i] <= target) {
            run += items[i];
            taken.push_back(static_cast<std::uint32_t>(i));
        } else {
            skipped.push_back(static_cast<std::uint32_t>(i));
        }
    }
    if (u128(run) * 2 >= target) {
        r.subset = std::move(taken);
        r.sum = run;
        return r;
    }
    for (std::uint32_t i : skipped) {
        if (u128(items[i]) * 2 > target && items[i] <= target) {
            r.subset = {i};
            r.sum = items[i];
            return r;
        }
    }
    // Unreachable: total > t and greedy below t/2 forces a large skipped item.
    throw std::logic_error("trivial_check: no certificate found");
}

PrepResult preprocess_small_items(const std::vector<Value>& items, Value inv_eps,
                                  Value target) {
    PrepResult r;
    std::vector<std::uint32_t> pending;
    u128 pending_sum = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Value x = items[i];
        if (u128(x) * inv_eps < target) {
            pending.push_back(static_cast<std::uint32_t>(i));
            pending_sum += x;
            if (pending_sum * inv_eps >= target) {
                r.items.push_back(static_cast<Value>(pending_sum));
                r.origin.push_back(std::move(pending));
                pending.clear();
                pending_sum = 0;
            }
        } else {
            r.items.push_back(x);
            r.origin.push_back({static_cast<std::uint32_t>(i)});
        }
    }
    r.deleted = std::move(pending);
    return r;
}

ScaleResult scale_and_group(const std::vector<Value>& items, Value inv_eps,
                            Value target) {
    if (target < 1) throw std::invalid_argument("scale_and_group: target must be positive");
    ScaleResult out;
    out.scaled_target = inv_eps * inv_eps;
    std::map<Value, ScaledGroup> groups;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Value x = items[i];
        if (u128(x) * inv_eps < target)
            throw std::invalid_argument("scale_and_group: item below eps*t");
        const Value xp = static_cast<Value>(u128(x) * inv_eps * inv_eps / target);
        assert(xp >= inv_eps && xp <= out.scaled_target);
        const Value alpha = Value{1} << floor_log2(xp / inv_eps);
        const Value xpp = xp / alpha;
        assert(xpp >= inv_eps && xpp < 2 * inv_eps);
        auto& grp = groups[alpha];
        grp.alpha = alpha;
        grp.members.push_back(static_cast<std::uint32_t>(i));
        grp.values.push_back(xpp);
    }
    for (auto& [alpha, grp] : groups) {
        grp.group_target = out.scaled_target / alpha;
        out.groups.push_back(std::move(grp));
    }
    return out;
}

std::vector<Value> dyadic_windows(Value top, Value inv_eps) {
    std::vector<Value> betas;
    for (Value beta = 1; beta * inv_eps < top; beta *= 2) betas.push_back(beta);
    return betas;
}

ValueSet mirror_upper_half(const ValueSet& s, Value total) {
    ValueSet out;
    std::vector<Value> vals;
    vals.reserve(s.elements.size());
    for (Value v : s.elements)
        if (v <= total) vals.push_back(total - v);
    out.elements = IntSet::from_values(std::move(vals), total);
    out.window_lo = s.window_hi >= total ? 0 : total - s.window_hi;
    out.window_hi = s.window_lo >= total ? 0 : total - s.window_lo;
    out.delta_cert = s.delta_cert;
    out.provenance = s.provenance;
    return out;
}

IntSet exact_subset_sums(const std::vector<Value>& items, Value cap) {
    const std::size_t words = static_cast<std::size_t>(cap / 64 + 1);
    if (u128(items.size() + 1) * words > (u128(1) << 27))
        throw std::length_error("exact_subset_sums: instance exceeds the desk-scale budget");
    std::vector<std::uint64_t> bits(words, 0);
    bits[0] = 1;
    for (Value x : items) {
        if (x > cap) continue;
        const std::size_t off = static_cast<std::size_t>(x / 64), sh = x % 64;
        for (std::size_t w = words; w-- > 0;) {
            std::uint64_t v = 0;
            if (w >= off) {
                v = bits[w - off] << sh;
                if (sh && w > off) v |= bits[w - off - 1] >> (64 - sh);
            }
            bits[w] |= v;
        }
    }
    std::vector<Value> sums;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t b = bits[w];
        while (b) {
            const Value v = 64 * w + static_cast<unsigned>(__builtin_ctzll(b));
            if (v <= cap) sums.push_back(v);
            b &= b - 1;
        }
    }
    return IntSet::from_sorted(std::move(sums), cap);
}

bool exact_solve_feasible(std::size_t n, Value target) {
    const u128 words = u128(target) / 64 + 1;
    return u128(n + 1) * words <= (u128(1) << 24);
}

ExactSolve exact_solve(const std::vector<Value>& items, Value target) {
    if (!exact_solve_feasible(items.size(), target))
        throw std::length_error("exact_solve: instance exceeds the desk-scale budget");
    const std::size_t words = static_cast<std::size_t>(target / 64 + 1);
    std::vector<std::vector<std::uint64_t>> dp(items.size() + 1);
    dp[0].assign(words, 0);
    dp[0][0] = 1;
    for (std::size_t i = 0; i < items.size(); ++i) {
        dp[i + 1] = dp[i];
        const Value x = items[i];
        if (x > target) continue;
        const std::size_t off = static_cast<std::size_t>(x / 64), sh = x % 64;
        auto& bits = dp[i + 1];
        for (std::size_t w = words; w-- > 0;) {
            std::uint64_t v = 0;
            if (w >= off) {
                v = dp[i][w - off] << sh;
                if (sh && w > off) v |= dp[i][w - off - 1] >> (64 - sh);
            }
            bits[w] |= v;
        }
    }
    auto has = [&](const std::vector<std::uint64_t>& bits, Value v) {
        return (bits[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1;
    };
    Value best = 0;
    for (Value v = target;; --v) {
        if (has(dp[items.size()], v)) {
            best = v;
            break;
        }
        if (v == 0) break;
    }
    ExactSolve r;
    r.value = best;
    Value v = best;
    for (std::size_t i = items.size(); i-- > 0;) {
        if (has(dp[i], v)) continue;
        r.witness.push_back(static_cast<std::uint32_t>(i));
        v -= items[i];
    }
    assert(v == 0);
    std::sort(r.witness.begin(), r.witness.end());
    return r;
}

// ---------------------------------------------------------------------------
// Main solve chain internals
// ---------------------------------------------------------------------------

namespace {

struct GroupValueEntry {
    Value v = 0;  // group-scale units
    int window = -1;
    bool mirrored = false;
    Value source = 0;
    std::uint32_t base_item = kNoPos;  // position within the group
};

struct GroupTable {
    const ScaledGroup* group = nullptr;
    std::vector<GroupValueEntry> entries;  // sorted by v, deduplicated
    std::vector<WitnessRun> runs;          // witness mode traces
    Value cert = 0;                        // max window cert, group-scale units
    u128 total = 0;
};

GroupTable build_group_table(const ScaledGroup& group, Value inv_eps,
                             const PipelineConfig& pcfg, bool value_only,
                             std::uint64_t seed, EngineStats* engine,
                             PipelineStats* pstats) {
    GroupTable tab;
    tab.group = &group;
    for (Value v : group.values) tab.total += v;
    const Value total = static_cast<Value>(tab.total);
    const Value cap_g = std::min<Value>(total, group.group_target);
    const Value half = total / 2;
    const Value cap_direct = std::min(cap_g, half);

    std::vector<GroupValueEntry> raw;
    raw.push_back({0, -1, false, 0, kNoPos});
    for (std::size_t pos = 0; pos < group.values.size(); ++pos) {
        if (group.values[pos] == inv_eps)
            raw.push_back({inv_eps, -1, false, inv_eps, static_cast<std::uint32_t>(pos)});
    }

    int widx = 0;
    for (Value beta = 1; beta * inv_eps < cap_direct; beta *= 2, ++widx) {
        const Value cov = std::min(2 * beta * inv_eps, cap_direct);
        if (value_only) {
            ValueSet vs = run_value_pipeline(group.values, beta, inv_eps, pcfg,
                                             derive_stream(seed, {7, static_cast<std::uint64_t>(widx)}),
                                             engine, pstats, cov);
            tab.cert = std::max(tab.cert, vs.delta_cert);
            for (Value v : vs.elements) raw.push_back({v, widx, false, v, kNoPos});
            tab.runs.emplace_back();  // keep window indices aligned
            tab.runs.back().values = std::move(vs);
        } else {
            WitnessRun run = run_witness_pipeline(group.values, beta, inv_eps, pcfg,
                                                  derive_stream(seed, {7, static_cast<std::uint64_t>(widx)}),
                                                  engine, pstats, cov);
            tab.cert = std::max(tab.cert, run.values.delta_cert);
            for (Value v : run.values.elements) raw.push_back({v, widx, false, v, kNoPos});
            tab.runs.push_back(std::move(run));
        }
    }

    if (cap_g > half) {
        // Mirror the directly covered half through complementation.
        const std::size_t direct_count = raw.size();
        for (std::size_t i = 0; i < direct_count; ++i) {
            const auto& e = raw[i];
            if (e.v > total) continue;
            const Value mv = total - e.v;
            if (mv > cap_g + tab.cert) continue;
            raw.push_back({mv, e.window, true, e.v, e.base_item});
        }
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const GroupValueEntry& a, const GroupValueEntry& b) {
                         return a.v < b.v;
                     });
    for (const auto& e : raw) {
        if (tab.entries.empty() || tab.entries.back().v != e.v) tab.entries.push_back(e);
    }
    return tab;
}

std::vector<std::uint32_t> unwind_group(const GroupTable& tab,
                                        const GroupValueEntry& e) {
    std::vector<std::uint32_t> pos;
    auto direct = [&](Value v, int window, std::uint32_t base_item) {
        if (window < 0) {
            if (base_item != kNoPos) return std::vector<std::uint32_t>{base_item};
            return std::vector<std::uint32_t>{};
        }
        return backtrack(tab.runs[static_cast<std::size_t>(window)].trace, v);
    };
    if (!e.mirrored) return direct(e.v, e.window, e.base_item);
    std::vector<std::uint32_t> src = direct(e.source, e.window, e.base_item);
    std::vector<bool> used(tab.group->values.size(), false);
    for (std::uint32_t p : src) used[p] = true;
    for (std::uint32_t p = 0; p < used.size(); ++p)
        if (!used[p]) pos.push_back(p);
    return pos;
}

// --- instrumented group merge, mirroring approx_sumset_many ----------------

struct MergeNode {
    enum class Kind { leaf, pair, reround } kind = Kind::leaf;
    int group = -1;
    int a = -1, b = -1;
    Value step = 1;
    std::vector<Value> set;
    // per child: sorted quotients with the smallest source value for each,
    // precomputed so candidate walks need only binary searches
    std::vector<Value> lq, lsrc, rq, rsrc;
};

void fill_quotients(const std::vector<Value>& child, Value step,
                    std::vector<Value>& q, std::vector<Value>& src) {
    q.clear();
    src.clear();
    for (Value v : child) {
        const Value quo = v / step;
        if (q.empty() || q.back() != quo) {
            q.push_back(quo);
            src.push_back(v);  // ascending scan: first = smallest source
        }
    }
}

// Rounded-down pairwise merge over [0, u] at accuracy 1/inv; step 1 is exact.
MergeNode merge_pair(const std::vector<Value>& a, const std::vector<Value>& b,
                     Value u, Value inv, Value& cert_out) {
    MergeNode n;
    n.kind = MergeNode::Kind::pair;
    Value step = 1;
    if (2 * inv < u) {
        const Value twoe = 2 * inv;
        const Value u2 = (u + twoe - 1) / twoe * twoe;
        step = u2 / twoe;
    }
    n.step = step;
    auto quotients = [&](const std::vector<Value>& s) {
        std::vector<Value> q;
        q.reserve(s.size());
        for (Value v : s)
            if (v / step * step <= u) q.push_back(v / step);
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        return q;
    };
    const std::vector<Value> qa = quotients(a), qb = quotients(b);
    IntSet sa = IntSet::from_sorted(qa, qa.empty() ? 0 : qa.back());
    IntSet sb = IntSet::from_sorted(qb, qb.empty() ? 0 : qb.back());
    IntSet qs = dense_sumset(sa, sb);
    for (Value q : qs) {
        const Value v = q * step;
        if (v <= u) n.set.push_back(v);
    }
    fill_quotients(a, step, n.lq, n.lsrc);
    fill_quotients(b, step, n.rq, n.rsrc);
    cert_out = step == 1 ? 0 : 2 * step - 2;
    return n;
}

struct MergeResult {
    std::vector<MergeNode> nodes;
    int root = -1;
    Value cert = 0;  // merge-only certified error (x' units)
};

MergeResult build_merge(const std::vector<std::vector<Value>>& leaf_sets, Value u,
                        Value inv_eps) {
    MergeResult mr;
    struct Item {
        int id;
        Value cert;
    };
    std::vector<Item> cur;
    for (std::size_t gi = 0; gi < leaf_sets.size(); ++gi) {
        MergeNode leaf;
        leaf.kind = MergeNode::Kind::leaf;
        leaf.group = static_cast<int>(gi);
        leaf.set = leaf_sets[gi];
        mr.nodes.push_back(std::move(leaf));
        cur.push_back({static_cast<int>(mr.nodes.size()) - 1, 0});
    }
    const std::size_t l = leaf_sets.size();
    if (l == 1) {
        mr.root = cur[0].id;
        mr.cert = 0;
        return mr;
    }
    const Value node_inv = l == 2 ? 2 * inv_eps : 2 * inv_eps * l;
    while (cur.size() > 1) {
        std::vector<Item> next;
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) {
            Value cert = 0;
            MergeNode n = merge_pair(mr.nodes[cur[i].id].set, mr.nodes[cur[i + 1].id].set,
                                     u, node_inv, cert);
            n.a = cur[i].id;
            n.b = cur[i + 1].id;
            mr.nodes.push_back(std::move(n));
            next.push_back({static_cast<int>(mr.nodes.size()) - 1,
                            cur[i].cert + cur[i + 1].cert + cert});
        }
        if (cur.size() % 2 == 1) next.push_back(cur.back());
        cur = std::move(next);
    }
    mr.root = cur[0].id;
    mr.cert = cur[0].cert;
    if (l >= 3) {
        const Value final_inv = 4 * inv_eps;
        if (2 * final_inv < u) {
            const Value twoe = 2 * final_inv;
            const Value u2 = (u + twoe - 1) / twoe * twoe;
            const Value step = u2 / twoe;
            MergeNode rr;
            rr.kind = MergeNode::Kind::reround;
            rr.a = mr.root;
            rr.step = step;
            for (Value v : mr.nodes[mr.root].set) {
                const Value rv = v / step * step;
                if (rv <= u) rr.set.push_back(rv);
            }
            rr.set.erase(std::unique(rr.set.begin(), rr.set.end()), rr.set.end());
            fill_quotients(mr.nodes[static_cast<std::size_t>(rr.a)].set, step, rr.lq, rr.lsrc);
            mr.nodes.push_back(std::move(rr));
            mr.root = static_cast<int>(mr.nodes.size()) - 1;
            mr.cert += step - 1;
        }
    }
    return mr;
}

/// Decomposes a merged value into one value per leaf group.
void merge_backtrack(const MergeResult& mr, int id, Value v,
                     std::vector<std::pair<int, Value>>& out) {
    const MergeNode& n = mr.nodes[static_cast<std::size_t>(id)];
    switch (n.kind) {
        case MergeNode::Kind::leaf:
            out.emplace_back(n.group, v);
            return;
        case MergeNode::Kind::reround: {
            auto it = std::lower_bound(n.lq.begin(), n.lq.end(), v / n.step);
            if (it == n.lq.end() || *it != v / n.step)
                throw std::logic_error("merge_backtrack: no reround pre-image");
            merge_backtrack(mr, n.a, n.lsrc[static_cast<std::size_t>(it - n.lq.begin())], out);
            return;
        }
        case MergeNode::Kind::pair: {
            const Value vq = v / n.step;
            const bool left_small = n.lq.size() <= n.rq.size();
            const auto& sq = left_small ? n.lq : n.rq;
            const auto& ssrc = left_small ? n.lsrc : n.rsrc;
            const auto& oq = left_small ? n.rq : n.lq;
            const auto& osrc = left_small ? n.rsrc : n.lsrc;
            for (std::size_t i = 0; i < sq.size(); ++i) {
                if (sq[i] > vq) break;
                auto it = std::lower_bound(oq.begin(), oq.end(), vq - sq[i]);
                if (it != oq.end() && *it == vq - sq[i]) {
                    const Value other = osrc[static_cast<std::size_t>(it - oq.begin())];
                    merge_backtrack(mr, n.a, left_small ? ssrc[i] : other, out);
                    merge_backtrack(mr, n.b, left_small ? other : ssrc[i], out);
                    return;
                }
            }
            throw std::logic_error("merge_backtrack: no pair decomposition");
        }
    }
}

struct AttemptResult {
    Value best_sum = 0;
    std::vector<std::uint32_t> witness;  // indices into the active item list
    bool found = false;
    Value delta_orig = 0;
    Value claimed_value = 0;  // value-only mode
    EngineStats engine;
    PipelineStats pstats;
};

AttemptResult attempt_solve(const std::vector<Value>& active, Value t, Value inv_eps,
                            Value cap_user, const SolveOptions& opt,
                            std::uint64_t seed) {
    AttemptResult ar;
    const Value E = inv_eps;

    PrepResult prep = preprocess_small_items(active, E, t);
    if (prep.items.empty()) return ar;
    ScaleResult scaled = scale_and_group(prep.items, E, t);

    PipelineConfig pcfg;
    pcfg.density = opt.density;
    pcfg.sumset = opt.sumset;
    pcfg.qstar_inv = opt.qstar_inv;

    std::vector<GroupTable> tables;
    tables.reserve(scaled.groups.size());
    for (std::size_t gi = 0; gi < scaled.groups.size(); ++gi) {
        tables.push_back(build_group_table(scaled.groups[gi], E, pcfg, opt.value_only,
                                           derive_stream(seed, {3, gi}).next_u64(),
                                           &ar.engine, &ar.pstats));
    }

    // Merge the per-group tables at the common scale.
    std::vector<std::vector<Value>> leaf_sets;
    leaf_sets.reserve(tables.size());
    u128 cert_scaled = 0;  // sum over groups of cert * alpha, plus merge cert
    for (const auto& tab : tables) {
        std::vector<Value> s;
        s.reserve(tab.entries.size());
        for (const auto& e : tab.entries) s.push_back(e.v * tab.group->alpha);
        leaf_sets.push_back(std::move(s));
        cert_scaled += u128(tab.cert) * tab.group->alpha;
    }
    const Value u_merge = 2 * scaled.scaled_target;
    MergeResult mr = build_merge(leaf_sets, u_merge, E);
    cert_scaled += mr.cert;

    const u128 e2 = u128(E) * E;
    ar.delta_orig = static_cast<Value>((cert_scaled * t + e2 - 1) / e2) +
                    6 * ((t + E - 1) / E) + 2;

    // Walk candidates from the top; each candidate's true achievable sum is
    // bracketed, so the scan stops as soon as no candidate can improve.
    const auto& root_set = mr.nodes[static_cast<std::size_t>(mr.root)].set;
    const u128 allowance = 4 * ((t + E - 1) / E) + 2;
    for (auto it = root_set.rbegin(); it != root_set.rend(); ++it) {
        const Value v = *it;
        const u128 upper = (u128(v) + cert_scaled) * t / e2 + allowance;
        if (ar.found && upper <= ar.best_sum) break;
        if (opt.value_only) {
            const Value claim = static_cast<Value>(std::min<u128>(u128(v) * t / e2, cap_user));
            ar.claimed_value = claim;
            ar.found = true;
            break;
        }
        std::vector<std::pair<int, Value>> parts;
        merge_backtrack(mr, mr.root, v, parts);
        std::vector<std::uint32_t> active_idx;
        u128 sum = 0;
        for (const auto& [gi, gv] : parts) {
            const GroupTable& tab = tables[static_cast<std::size_t>(gi)];
            const Value vpp = gv / tab.group->alpha;
            auto eit = std::lower_bound(tab.entries.begin(), tab.entries.end(), vpp,
                                        [](const GroupValueEntry& e, Value x) {
                                            return e.v < x;
                                        });
            if (eit == tab.entries.end() || eit->v != vpp)
                throw std::logic_error("solve: merged value missing from group table");
            for (std::uint32_t pos : unwind_group(tab, *eit)) {
                const std::uint32_t prep_idx = tab.group->members[pos];
                for (std::uint32_t orig : prep.origin[prep_idx]) {
                    active_idx.push_back(orig);
                    sum += active[orig];
                }
            }
        }
        if (sum <= cap_user && (!ar.found || sum > ar.best_sum)) {
            ar.best_sum = static_cast<Value>(sum);
            ar.witness = std::move(active_idx);
            ar.found = true;
        }
    }
    return ar;
}

}  // namespace

SolveResult solve_weak_subset_sum(const Instance& inst, const SolveOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(inst.eps > 0.0 && inst.eps < 1.0))
        throw std::invalid_argument("solve: epsilon must lie in (0, 1)");
    if (inst.target > (Value{1} << 62))
        throw std::invalid_argument("solve: target exceeds the 64-bit engine ceiling");
    for (Value v : inst.items)
        if (v == 0) throw std::invalid_argument("solve: items must be positive");

    SolveResult res;
    res.mode = "subset-sum";
    res.seed = opt.seed;
    res.eps = inst.eps;
    res.target = inst.target;
    res.n = inst.items.size();
    const Value slack = eps_slack(inst.eps, inst.target);
    res.guarantee_upper = inst.target + slack;

    auto finish = [&](SolveResult& r) -> SolveResult& {
        r.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        return r;
    };

    // Items above t can never be used.
    std::vector<Value> active;
    std::vector<std::uint32_t> active_to_orig;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (inst.items[i] <= inst.target) {
            active.push_back(inst.items[i]);
            active_to_orig.push_back(static_cast<std::uint32_t>(i));
        }
    }

    if (inst.target == 0 || active.empty()) {
        res.exact = true;
        res.certified = true;
        return finish(res);
    }

    TrivialCheck tc = trivial_check(active, inst.target);
    if (tc.exact) {
        res.exact = true;
        res.certified = true;
        res.value = tc.sum;
        for (std::uint32_t i : tc.subset) res.witness.push_back(active_to_orig[i]);
        res.opt_floor = tc.sum;
        return finish(res);
    }
    res.opt_floor = (inst.target + 1) / 2;

    // An item equal to t is an exact optimum outright.
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i] == inst.target) {
            res.exact = true;
            res.certified = true;
            res.value = inst.target;
            res.witness = {active_to_orig[i]};
            res.opt_floor = inst.target;
            return finish(res);
        }
    }

    // Accuracies below one value unit demand exact computation (the eps ~ 1/t
    // regime); the tree pipeline cannot certify sub-unit error.
    if (slack < kExactRegimeSlack && exact_solve_feasible(active.size(), inst.target)) {
        ExactSolve ex = exact_solve(active, inst.target);
        res.exact = true;
        res.certified = true;
        res.value = ex.value;
        for (std::uint32_t i : ex.witness) res.witness.push_back(active_to_orig[i]);
        res.opt_floor = ex.value;
        return finish(res);
    }

    Value c_adj = opt.c_adj ? opt.c_adj : default_c_adj(inst.eps);
    const Value cap_user = inst.target + slack;
    AttemptResult best;
    bool have = false;
    Value best_delta = ~Value{0};
    for (int attempt = 0;; ++attempt) {
        Value inv_eps = static_cast<Value>(
            std::ceil(static_cast<long double>(c_adj) / inst.eps));
        inv_eps = std::min(inv_eps, kMaxInvEps);
        AttemptResult ar = attempt_solve(active, inst.target, inv_eps, cap_user, opt,
                                         derive_stream(opt.seed, {static_cast<std::uint64_t>(attempt)})
                                             .next_u64());
        res.engine.merge(ar.engine);
        res.levels_computed += ar.pstats.levels_computed;
        res.dense_fired = res.dense_fired || ar.pstats.dense_fired;
        res.c_adj_used = c_adj;
        res.retries = attempt;
        const Value cur_delta = ar.delta_orig;
        best_delta = std::min(best_delta, cur_delta);
        if (!have || ar.best_sum > best.best_sum ||
            (ar.best_sum == best.best_sum && ar.delta_orig < best.delta_orig)) {
            best = std::move(ar);
            have = true;
        }
        if (best_delta * 4 <= slack || attempt >= opt.max_retries ||
            inv_eps >= kMaxInvEps) {
            res.certified = best_delta * 4 <= slack;
            break;
        }
        // Jump straight to the multiplier the measured certificate demands.
        const Value need = cur_delta * 4 / std::max<Value>(slack, 1) + 1;
        c_adj = c_adj * next_pow2(std::max<Value>(need, 4));
    }

    res.delta_cert = best_delta;
    if (opt.value_only) {
        res.value = best.claimed_value;
        return finish(res);
    }

    // The harvested candidate, the greedy certificate and the best single item
    // compete; the witness sum is always recomputed exactly.
    Value best_sum = best.found ? best.best_sum : 0;
    std::vector<std::uint32_t> best_wit = best.witness;
    if (tc.sum <= cap_user && tc.sum > best_sum) {
        best_sum = tc.sum;
        best_wit = tc.subset;
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i] <= cap_user && active[i] > best_sum) {
            best_sum = active[i];
            best_wit = {static_cast<std::uint32_t>(i)};
        }
    }
    res.value = best_sum;
    res.witness.clear();
    for (std::uint32_t i : best_wit) res.witness.push_back(active_to_orig[i]);
    std::sort(res.witness.begin(), res.witness.end());
    return finish(res);
}

SolveResult solve_partition(const std::vector<Value>& items, double eps,
                            const SolveOptions& opt) {
    if (items.empty()) throw std::invalid_argument("solve_partition: empty instance");
    u128 total = 0;
    for (Value v : items) total += v;
    Instance inst;
    inst.items = items;
    inst.target = static_cast<Value>(total / 2);
    inst.eps = eps;
    SolveResult res = solve_weak_subset_sum(inst, opt);
    res.mode = "partition";
    std::vector<bool> used(items.size(), false);
    for (std::uint32_t i : res.witness) used[i] = true;
    u128 csum = 0;
    for (std::uint32_t i = 0; i < items.size(); ++i) {
        if (!used[i]) {
            res.complement.push_back(i);
            csum += items[i];
        }
    }
    res.complement_sum = static_cast<Value>(csum);
    return res;
}

}  // namespace ssapx
