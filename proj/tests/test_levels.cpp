#include "doctest.h"

#include "ssapx/levels.hpp"
#include "ssapx/selftest.hpp"

using namespace ssapx;

namespace {

Level make_level(std::vector<IntSet> nodes, std::uint32_t h, Value inv_eps, Value beta,
                 bool rounded) {
    Level lv;
    lv.height = h;
    lv.leaf_count = nodes.size() << h;
    lv.inv_eps = inv_eps;
    lv.beta = beta;
    lv.coverage_top = 2 * beta * inv_eps;
    lv.clip_limit = ~Value{0} >> 1;
    lv.nodes = std::move(nodes);
    lv.rounded = rounded;
    return lv;
}

IntSet evens_to(Value hi) {
    std::vector<Value> v;
    for (Value x = 0; x <= hi; x += 2) v.push_back(x);
    return IntSet::from_sorted(std::move(v), hi);
}

}  // namespace

TEST_CASE("level zero leaves = cells with 0 adjoined, padded") {
    std::vector<Value> items{5, 5, 7};
    PartitionFamily fam = small_color_coding(items, 2, 2, 1);
    tree::Layout lay = tree::plan_layout(fam);
    CHECK(lay.leaf_count() == 4);  // 3 nonempty cells padded to a power of two
    std::vector<std::vector<std::pair<Value, std::uint32_t>>> leaf_values;
    Level lv = level_zero(fam, 0, items, 1, 8, 0, lay, &leaf_values);
    REQUIRE(lv.nodes.size() == 4);
    CHECK(lv.nodes[0] == IntSet::from_values({0, 5}, 16));
    CHECK(lv.nodes[3] == IntSet::from_values({0}, 16));  // padding leaf
    // both duplicate items are recorded under their shared value
    std::size_t fives = 0;
    for (const auto& leaf : leaf_values)
        for (const auto& [val, item] : leaf)
            if (val == 5) ++fives;
    CHECK(fives == 2);
    // sum of maxima equals the instance total here (singleton cells)
    CHECK(lv.max_sum() == 17);
}

TEST_CASE("round_level rounds up and charges the worst case") {
    Level lv = make_level({IntSet::from_values({0, 3, 5}, 16)}, 0, 8, 1, false);
    round_level(lv);
    CHECK(lv.nodes[0] == IntSet::from_values({0, 4, 6}, 16));
    CHECK(lv.err_cum == 2);  // one node at height 0
    CHECK(lv.rounded);

    // already-granular level: unchanged elements, error still charged
    Level lv2 = make_level({evens_to(8)}, 0, 8, 1, false);
    round_level(lv2);
    CHECK(lv2.nodes[0] == evens_to(8));
    CHECK(lv2.err_cum == 2);

    // rounding never shrinks the maximum and grows it below 2^(h+1)
    Level lv3 = make_level({IntSet::from_values({0, 9}, 16)}, 0, 8, 1, false);
    round_level(lv3);
    CHECK(lv3.nodes[0].max() == 10);
}

TEST_CASE("advance_level sparse: two trivial nodes produce the 2x2 sumset") {
    Level lv = make_level({IntSet::from_values({0, 4}, 16), IntSet::from_values({0, 6}, 16)},
                          0, 8, 1, true);
    PipelineConfig cfg;
    auto out = advance_level(lv, cfg, Stream(5));
    REQUIRE(out.next.has_value());
    CHECK_FALSE(out.verdict.dense);
    CHECK(out.next->nodes.size() == 1);
    CHECK(out.next->nodes[0] == IntSet::from_values({0, 4, 6, 10}, 32));
    CHECK(out.next->height == 1);
}

TEST_CASE("advance_level dense: grid replaces the level") {
    // 68 full pairs at 1/eps = 16: at threshold 2^5 every pair survives, and
    // 68 * 31 beats 2*c*gamma*(2/eps) = 1024 at gamma = 4, so the grid fires.
    std::vector<IntSet> nodes;
    for (int i = 0; i < 136; ++i) nodes.push_back(evens_to(32));
    Level lv = make_level(std::move(nodes), 0, 16, 1024, true);
    PipelineConfig cfg;
    PipelineStats stats;
    auto out = advance_level(lv, cfg, Stream(5), nullptr, &stats);
    REQUIRE(out.grid.has_value());
    CHECK(stats.dense_fired);
    const ValueSet& vs = *out.grid;
    CHECK(vs.provenance == ValueSet::Provenance::dense_grid);
    CHECK(vs.window_lo == 1024 * 16);
    CHECK(vs.window_hi == 2 * 1024 * 16);
    // grid over the window with step 2*beta
    CHECK(vs.elements.size() == (vs.window_hi - vs.window_lo) / (2 * 1024) + 1);
    CHECK(vs.delta_cert == lv.err_cum + 2 * 1024);
    for (Value v : vs.elements) CHECK((v - vs.window_lo) % (2 * 1024) == 0);
}

TEST_CASE("value pipeline on a uniform instance hits every window sum") {
    // items all equal 1/eps: true window sums are the multiples j/eps
    const Value inv_eps = 8, beta = 2;
    std::vector<Value> items(4 * beta, inv_eps);
    PipelineConfig cfg;
    ValueSet vs = run_value_pipeline(items, beta, inv_eps, cfg, Stream(3));
    for (Value j = beta; j <= 2 * beta; ++j) {
        const Value s = j * inv_eps;
        bool near = false;
        for (Value v : vs.elements) near |= (v > s ? v - s : s - v) <= vs.delta_cert;
        CHECK(near);
    }
}

TEST_CASE("pipeline preconditions") {
    PipelineConfig cfg;
    CHECK_THROWS(run_value_pipeline({}, 1, 8, cfg, Stream(0)));
    CHECK_THROWS(run_value_pipeline({8}, 1, 8, cfg, Stream(0)));  // sum too small
    CHECK_THROWS(run_value_pipeline({8, 8}, 1, 1, cfg, Stream(0)));
}

TEST_CASE("value pipeline matches the oracle two-sidedly") {
    CHECK(suite_pipeline_oracle(60, 44).pass());
}
