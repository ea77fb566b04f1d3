#include "doctest.h"

#include "ssapx/selftest.hpp"
#include "ssapx/witness.hpp"

using namespace ssapx;

namespace {
IntSet mk(std::vector<Value> v) {
    Value u = 0;
    for (Value x : v) u = std::max(u, x);
    return IntSet::from_values(std::move(v), u);
}
}  // namespace

TEST_CASE("partial_sumset keeps the defining elements") {
    auto ps = partial_sumset(mk({0, 1}), mk({0, 3}), 3, Stream(1));
    CHECK(ps.h.size() == 3);
    CHECK(ps.h.contains(0));
    CHECK(ps.h.contains(4));
    IntSet full = dense_sumset(mk({0, 1}), mk({0, 3}));
    for (Value v : ps.h) CHECK(full.contains(v));

    // k = |A+B|: the whole sumset comes back
    auto all = partial_sumset(mk({0, 1}), mk({0, 3}), 4, Stream(1));
    CHECK(all.h == full);

    auto zero = partial_sumset(mk({0}), mk({0}), 1, Stream(1));
    CHECK(zero.h == mk({0}));

    CHECK_THROWS(partial_sumset(mk({0, 1}), mk({0, 3}), 5, Stream(1)));
    CHECK_THROWS(partial_sumset(mk({1, 2}), mk({0}), 1, Stream(1)));  // no 0
}

TEST_CASE("partial_sumset prefix search path") {
    // |A| < k forces the binary search over prefixes of B
    std::vector<Value> bv{0};
    for (Value x = 10; x <= 200; x += 10) bv.push_back(x);
    IntSet a = mk({0, 1, 2});
    IntSet b = mk(bv);
    const Value k = 17;
    auto ps = partial_sumset(a, b, k, Stream(9));
    CHECK(ps.h.size() == k);
    CHECK(ps.h.contains(0));
    CHECK(ps.h.contains(a.max() + b.max()));
    IntSet full = dense_sumset(a, b);
    for (Value v : ps.h) CHECK(full.contains(v));
}

TEST_CASE("compute_partial_level equals advance_level while sparse") {
    Level lv;
    lv.height = 0;
    lv.leaf_count = 4;
    lv.inv_eps = 8;
    lv.beta = 1;
    lv.coverage_top = 16;
    lv.clip_limit = ~Value{0} >> 1;
    lv.rounded = true;
    lv.nodes = {mk({0, 4}).with_universe(16), mk({0, 6}).with_universe(16),
                mk({0, 2}).with_universe(16), mk({0, 8}).with_universe(16)};
    PipelineConfig cfg;
    auto a = advance_level(lv, cfg, Stream(4));
    auto p = compute_partial_level(lv, cfg, Stream(4));
    REQUIRE(a.next.has_value());
    CHECK_FALSE(p.verdict.dense);
    REQUIRE(a.next->nodes.size() == p.next.nodes.size());
    for (std::size_t i = 0; i < p.next.nodes.size(); ++i)
        CHECK(a.next->nodes[i] == p.next.nodes[i]);
}

TEST_CASE("compute_partial_level dense branch: floors and two-point nodes") {
    // 68 full pairs force the dense verdict; a few two-element pairs drop out
    // of the survivor set and must come back as {0, max+max} nodes.
    std::vector<IntSet> nodes;
    for (int i = 0; i < 136; ++i) {
        std::vector<Value> v;
        for (Value x = 0; x <= 32; x += 2) v.push_back(x);
        nodes.push_back(IntSet::from_sorted(std::move(v), 32));
    }
    for (int i = 0; i < 8; ++i)
        nodes.push_back(IntSet::from_values({0, 32}, 32));
    Level lv;
    lv.height = 0;
    lv.leaf_count = 144;
    lv.inv_eps = 16;
    lv.beta = 1024;
    lv.coverage_top = 2 * 1024 * 16;
    lv.clip_limit = ~Value{0} >> 1;
    lv.rounded = true;
    lv.nodes = std::move(nodes);
    PipelineConfig cfg;
    auto p = compute_partial_level(lv, cfg, Stream(4));
    REQUIRE(p.verdict.dense);
    const std::size_t pairs = 72;
    std::vector<bool> in_i(pairs, false);
    for (auto i : p.verdict.indices) in_i[i] = true;
    bool saw_two_point = false;
    for (std::size_t i = 0; i < pairs; ++i) {
        const IntSet& z = p.next.nodes[i];
        IntSet full = dense_sumset(lv.nodes[2 * i], lv.nodes[2 * i + 1]);
        for (Value v : z) CHECK(full.contains(v));
        CHECK(z.contains(0));
        CHECK(z.contains(lv.nodes[2 * i].max() + lv.nodes[2 * i + 1].max()));
        if (in_i[i]) {
            CHECK(z.size() == p.verdict.size_floor);
        } else {
            CHECK(z.size() == 2);
            saw_two_point = true;
        }
    }
    CHECK(saw_two_point);
    // sum of maxima is preserved exactly
    CHECK(p.next.max_sum() == lv.max_sum());
}

TEST_CASE("backtrack fundamentals") {
    const Value inv_eps = 8, beta = 1;
    std::vector<Value> items{8, 9, 11, 16, 12};
    PipelineConfig cfg;
    WitnessRun run = run_witness_pipeline(items, beta, inv_eps, cfg, Stream(10));
    // value 0 is always present and maps to the empty witness
    if (run.values.elements.contains(0))
        CHECK(backtrack(run.trace, 0).empty());
    for (Value s : run.values.elements) {
        auto wit = backtrack(run.trace, s);
        u128 sum = 0;
        std::vector<bool> used(items.size(), false);
        for (auto idx : wit) {
            REQUIRE(idx < items.size());
            CHECK_FALSE(used[idx]);
            used[idx] = true;
            sum += items[idx];
        }
        const Value ssum = static_cast<Value>(sum);
        CHECK((ssum > s ? ssum - s : s - ssum) <= run.values.delta_cert);
    }
    CHECK_THROWS(backtrack(run.trace, run.values.elements.max() + 1));
}

TEST_CASE("witness run equals value run when nothing is dense") {
    const Value inv_eps = 16, beta = 2;
    std::vector<Value> items{16, 20, 25, 31, 17, 19, 30};
    PipelineConfig cfg;
    PipelineStats st;
    ValueSet vs = run_value_pipeline(items, beta, inv_eps, cfg, Stream(21));
    WitnessRun run = run_witness_pipeline(items, beta, inv_eps, cfg, Stream(21), nullptr, &st);
    REQUIRE_FALSE(st.dense_fired);
    CHECK(run.values.elements == vs.elements);
    CHECK(run.values.delta_cert == vs.delta_cert);
}

TEST_CASE("witness suites") {
    CHECK(suite_witness_roundtrip(50, 55).pass());
    CHECK(suite_dense_branch(64, 56).pass());
}
