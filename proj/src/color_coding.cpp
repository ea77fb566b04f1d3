#include "ssapx/color_coding.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ssapx {

namespace {

long double log2_u128(u128 x) {
    assert(x > 0);
    int shift = 0;
    while (x >> 63) { x >>= 1; ++shift; }
    return std::log2(static_cast<long double>(static_cast<std::uint64_t>(x))) + shift;
}

Value ceil_log2_u128(u128 x) {
    assert(x > 0);
    Value bits = 0;
    u128 t = x;
    while (t >>= 1) ++bits;
    return ((u128(1) << bits) == x) ? bits : bits + 1;
}

Value pow2_at_least(long double x) {
    Value m = 1;
    while (static_cast<long double>(m) < x) m <<= 1;
    return m;
}

void sort_cells(std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>>& cells) {
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

CCParams cc_params(Value k, u128 q_inv) {
    if (k < 1 || q_inv < 1) throw std::invalid_argument("cc_params: bad arguments");
    const u128 ratio = u128(k) * q_inv;  // k/q
    if (ratio <= 2) throw std::invalid_argument("cc_params: k/q <= 2 degenerate");
    const long double lg = log2_u128(ratio);
    CCParams p;
    p.m = pow2_at_least(static_cast<long double>(k) / lg);
    p.g = pow2_at_least(36.0L * lg * lg);
    p.r = ceil_log2_u128(ratio);
    return p;
}

PartitionFamily color_coding(const std::vector<Value>& items, Value k, u128 q_inv,
                             Stream rng) {
    const CCParams p = cc_params(k, q_inv);
    const std::uint64_t root = rng.next_u64();

    // First layer: group assignment, shared by every repetition.
    std::vector<std::uint32_t> group_of(items.size());
    Stream layer1 = derive_stream(root, {0});
    std::vector<std::vector<std::uint32_t>> group_items(p.m);
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::uint32_t gi = static_cast<std::uint32_t>(layer1.uniform(p.m));
        group_of[i] = gi;
        group_items[gi].push_back(static_cast<std::uint32_t>(i));
    }

    PartitionFamily fam;
    fam.params = p;
    fam.n_items = items.size();
    fam.small_path = false;
    fam.reps.resize(p.r);
    for (Value j = 0; j < p.r; ++j) {
        std::map<std::uint64_t, std::vector<std::uint32_t>> cells;
        for (Value gi = 0; gi < p.m; ++gi) {
            if (group_items[gi].empty()) continue;
            Stream sub = derive_stream(root, {1, j, gi});
            for (std::uint32_t item : group_items[gi]) {
                std::uint64_t cell = gi * p.g + sub.uniform(p.g);
                cells[cell].push_back(item);
            }
        }
        fam.reps[j].assign(cells.begin(), cells.end());
    }
    return fam;
}

PartitionFamily small_color_coding(const std::vector<Value>& items, Value m,
                                   Value g, Value r) {
    if (items.size() > m * g)
        throw std::invalid_argument("small_color_coding: |X| > m*g");
    PartitionFamily fam;
    fam.params = {m, g, r};
    fam.n_items = items.size();
    fam.small_path = true;
    fam.reps.resize(1);
    auto& cells = fam.reps[0];
    cells.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        cells.emplace_back(i, std::vector<std::uint32_t>{static_cast<std::uint32_t>(i)});
    return fam;
}

PartitionFamily modified_color_coding(const std::vector<Value>& items, Value beta,
                                      Value inv_eps, u128 qstar_inv, Stream rng,
                                      Value min_total_override) {
    if (beta < 1 || inv_eps < 2 || qstar_inv < 1)
        throw std::invalid_argument("modified_color_coding: bad arguments");
    u128 total = 0;
    for (Value v : items) {
        if (v < inv_eps || v > 2 * inv_eps)
            throw std::invalid_argument("modified_color_coding: value outside [1/eps, 2/eps]");
        total += v;
    }
    const u128 min_total = min_total_override
                               ? u128(min_total_override)
                               : u128(4) * beta * inv_eps;
    if (total < min_total)
        throw std::invalid_argument("modified_color_coding: total below required floor");

    const Value k = 2 * beta;
    const u128 q_inv = qstar_inv * 2 * beta * inv_eps;  // q = q* * eps / (2 beta)

    // Degenerate parameters: one exhaustive partition, every item its own cell.
    if (k <= 2 || u128(k) * q_inv <= 2)
        return small_color_coding(items, next_pow2(std::max<Value>(items.size(), 1)), 1, 1);

    const CCParams base = cc_params(k, q_inv);
    const Value m4 = std::max<Value>(2, 2 * base.m);
    const Value g = base.g;
    const Value r = base.r;

    if (items.size() <= m4 * g / 2) {
        PartitionFamily fam = small_color_coding(items, m4, g, r);
        fam.params.r = r;
        return fam;
    }

    // Split: the first m4*g/2 items in input order become singleton cells in
    // the lower m4/2 groups; the rest go through plain color coding.
    const std::size_t n1 = static_cast<std::size_t>(m4 * g / 2);
    std::vector<Value> x2(items.begin() + n1, items.end());
    PartitionFamily cc = color_coding(x2, k, q_inv, rng);

    PartitionFamily fam;
    fam.params = {m4 / 2 + cc.params.m, g, r};
    fam.n_items = items.size();
    fam.small_path = false;
    fam.reps.resize(r);
    const std::uint64_t group_offset = m4 / 2;
    for (Value j = 0; j < r; ++j) {
        auto& cells = fam.reps[j];
        cells.reserve(n1 + cc.cells(j).size());
        for (std::size_t i = 0; i < n1; ++i)
            cells.emplace_back(i, std::vector<std::uint32_t>{static_cast<std::uint32_t>(i)});
        for (const auto& [cell, members] : cc.cells(j)) {
            std::vector<std::uint32_t> shifted;
            shifted.reserve(members.size());
            for (std::uint32_t it : members)
                shifted.push_back(static_cast<std::uint32_t>(it + n1));
            cells.emplace_back(group_offset * g + cell, std::move(shifted));
        }
        sort_cells(cells);
    }
    return fam;
}

u128 family_max_sum(const PartitionFamily& family, const std::vector<Value>& items,
                    std::size_t j) {
    u128 sum = 0;
    for (const auto& [cell, members] : family.cells(j)) {
        Value mx = 0;
        for (std::uint32_t it : members) mx = std::max(mx, items[it]);
        sum += mx;
    }
    return sum;
}

}  // namespace ssapx
