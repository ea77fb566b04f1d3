#include "doctest.h"

#include "ssapx/driver.hpp"
#include "ssapx/selftest.hpp"

using namespace ssapx;

TEST_CASE("trivial check") {
    auto a = trivial_check({6}, 10);
    CHECK(a.exact);
    CHECK(a.sum == 6);

    auto b = trivial_check({7, 7}, 10);
    CHECK_FALSE(b.exact);
    CHECK(b.sum == 7);
    CHECK(b.sum * 2 >= 10);
    CHECK(b.subset == std::vector<std::uint32_t>{0});

    auto c = trivial_check({}, 5);
    CHECK(c.exact);
    CHECK(c.sum == 0);
}

TEST_CASE("preprocess small items") {
    // threshold eps*t = 10 with 1/eps = 8, t = 80
    auto none = preprocess_small_items({20, 30}, 8, 80);
    CHECK(none.items == std::vector<Value>{20, 30});
    CHECK(none.deleted.empty());

    auto merged = preprocess_small_items({4, 4, 4, 20}, 8, 80);
    REQUIRE(merged.items.size() == 2);
    CHECK(merged.items[0] == 12);  // {4,4,4} merged, sum in [eps*t, 2*eps*t)
    CHECK(merged.origin[0] == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(merged.items[1] == 20);

    auto dropped = preprocess_small_items({4, 4}, 8, 80);
    CHECK(dropped.items.empty());
    CHECK(dropped.deleted.size() == 2);
}

TEST_CASE("scale and group") {
    // 1/eps = 10, t = 1000: x' = floor(x / 10)
    auto sc = scale_and_group({100, 199, 1000}, 10, 1000);
    CHECK(sc.scaled_target == 100);
    REQUIRE(sc.groups.size() >= 2);
    const auto& g1 = sc.groups.front();
    CHECK(g1.alpha == 1);
    REQUIRE(g1.values.size() == 2);
    CHECK(g1.values[0] == 10);
    CHECK(g1.values[1] == 19);
    for (const auto& g : sc.groups) {
        CHECK(g.group_target == 100 / g.alpha);
        for (Value v : g.values) {
            CHECK(v >= 10);
            CHECK(v < 20);
        }
    }
    CHECK_THROWS(scale_and_group({5}, 10, 1000));  // below eps*t
}

TEST_CASE("dyadic windows") {
    CHECK(dyadic_windows(8, 8).empty());
    CHECK(dyadic_windows(32, 8) == std::vector<Value>{1, 2});
    CHECK(dyadic_windows(24, 8) == std::vector<Value>{1, 2});
    // contiguous dyadic cover of (1/eps, top]
    Value covered = 8;
    for (Value beta : dyadic_windows(300, 8)) {
        CHECK(beta * 8 <= covered);
        covered = std::max(covered, 2 * beta * 8);
    }
    CHECK(covered >= 300 / 2);
}

TEST_CASE("mirror upper half") {
    ValueSet s;
    s.elements = IntSet::from_values({0, 3, 7}, 10);
    s.window_lo = 0;
    s.window_hi = 10;
    s.delta_cert = 1;
    ValueSet m = mirror_upper_half(s, 20);
    CHECK(m.elements == IntSet::from_values({13, 17, 20}, 20));
    CHECK(m.delta_cert == 1);
    ValueSet back = mirror_upper_half(m, 20);
    CHECK(back.elements == s.elements);  // involution
}

TEST_CASE("exact oracle") {
    CHECK(exact_subset_sums({1, 2}, 3) == IntSet::from_values({0, 1, 2, 3}, 3));
    CHECK(exact_subset_sums({2, 2}, 3) == IntSet::from_values({0, 2}, 3));
    Stream rng(15);
    for (int t = 0; t < 25; ++t) {
        std::vector<Value> items;
        const std::size_t n = 1 + rng.uniform(12);
        u128 sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back(1 + rng.uniform(200));
            sum += items.back();
        }
        CHECK(exact_subset_sums(items, static_cast<Value>(sum)) ==
              oracle::powerset_sums(items, static_cast<Value>(sum)));
    }
    CHECK_THROWS(exact_subset_sums({1}, ~Value{0} >> 1));
}

TEST_CASE("exact solve recovers a valid witness") {
    Stream rng(16);
    for (int t = 0; t < 20; ++t) {
        std::vector<Value> items;
        for (int i = 0; i < 14; ++i) items.push_back(1 + rng.uniform(500));
        const Value target = 200 + rng.uniform(2000);
        ExactSolve ex = exact_solve(items, target);
        u128 sum = 0;
        for (auto w : ex.witness) sum += items[w];
        CHECK(sum == ex.value);
        CHECK(ex.value == exact_subset_sums(items, target).max());
    }
}

TEST_CASE("solve: enumerable example") {
    Instance inst{{3, 5, 8}, 10, 0.25};
    SolveOptions opt;
    opt.seed = 7;
    SolveResult res = solve_weak_subset_sum(inst, opt);
    CHECK(res.value >= 6);   // (1-eps) * OPT = 6
    CHECK(res.value <= 12);  // (1+eps) * t
    u128 sum = 0;
    for (auto w : res.witness) sum += inst.items[w];
    CHECK(sum == res.value);
}

TEST_CASE("solve: trivial instances") {
    Instance empty{{}, 5, 0.25};
    SolveResult r1 = solve_weak_subset_sum(empty);
    CHECK(r1.exact);
    CHECK(r1.value == 0);

    Instance all{{2, 3}, 10, 0.25};
    SolveResult r2 = solve_weak_subset_sum(all);
    CHECK(r2.exact);
    CHECK(r2.value == 5);

    Instance hit{{4, 10, 3}, 10, 0.5};
    SolveResult r3 = solve_weak_subset_sum(hit);
    CHECK(r3.value == 10);
    CHECK(r3.witness == std::vector<std::uint32_t>{1});

    CHECK_THROWS(solve_weak_subset_sum(Instance{{1}, 5, 0.0}));
    CHECK_THROWS(solve_weak_subset_sum(Instance{{1}, 5, 1.0}));
}

TEST_CASE("solve determinism under a fixed seed") {
    std::vector<Value> items;
    Stream rng(90);
    for (int i = 0; i < 16; ++i) items.push_back(1 + rng.uniform(Value{1} << 18));
    Instance inst{items, 300000, 0.125};
    SolveOptions opt;
    opt.seed = 424242;
    SolveResult a = solve_weak_subset_sum(inst, opt);
    SolveResult b = solve_weak_subset_sum(inst, opt);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
    CHECK(a.delta_cert == b.delta_cert);
    CHECK(a.c_adj_used == b.c_adj_used);

    SolveOptions other;
    other.seed = 424243;
    SolveResult c = solve_weak_subset_sum(inst, other);
    u128 cs = 0;
    for (auto w : c.witness) cs += items[w];
    CHECK(cs == c.value);  // a different seed still yields a valid witness
}

TEST_CASE("partition basics") {
    SolveOptions opt;
    opt.seed = 3;
    SolveResult r = solve_partition({1, 2, 3, 4}, 0.1, opt);
    CHECK(r.value == 5);
    CHECK(r.value + r.complement_sum == 10);

    SolveResult single = solve_partition({1}, 0.5, opt);
    CHECK(single.value == 0);
    CHECK(single.complement_sum == 1);

    // all-equal items split into sides whose sizes differ by at most one
    std::vector<Value> equal(7, 5);
    SolveResult eq = solve_partition(equal, 1.0 / 128, opt);
    CHECK(eq.value == 15);
    CHECK(eq.witness.size() == 3);
}

TEST_CASE("driver suites") {
    CHECK(suite_reduction(120, 71).pass());
    CHECK(suite_end_to_end(60, 72).pass());
    CHECK(suite_partition(16, 73).pass());
}
