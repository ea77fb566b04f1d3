#include "doctest.h"

#include "ssapx/color_coding.hpp"
#include "ssapx/selftest.hpp"

using namespace ssapx;

TEST_CASE("cc_params formulas") {
    // k/q = 16, log = 4: m = 8/4 = 2, g = 36*16 = 576 -> 1024, r = 4
    CCParams p = cc_params(8, 2);
    CHECK(p.m == 2);
    CHECK(p.g == 1024);
    CHECK(p.r == 4);

    // k/q = 4, log = 2: m = 1, g = 144 -> 256, r = 2
    CCParams q = cc_params(2, 2);
    CHECK(q.m == 1);
    CHECK(q.g == 256);
    CHECK(q.r == 2);

    // decreasing q never decreases r
    Value prev = 0;
    for (u128 q_inv = 4; q_inv <= (u128(1) << 20); q_inv *= 4) {
        CCParams c = cc_params(8, q_inv);
        CHECK(c.r >= prev);
        prev = c.r;
    }
    CHECK_THROWS(cc_params(2, 1));  // k/q = 2 degenerate
}

TEST_CASE("color_coding partitions the index set") {
    std::vector<Value> items{5};
    PartitionFamily fam = color_coding(items, 4, 64, Stream(3));
    for (Value j = 0; j < fam.params.r; ++j) {
        std::size_t nonempty = 0, members = 0;
        for (const auto& [cell, m] : fam.cells(j)) {
            if (!m.empty()) ++nonempty;
            members += m.size();
            for (auto it : m) CHECK(it == 0);
        }
        CHECK(nonempty == 1);
        CHECK(members == 1);
    }

    std::vector<Value> many;
    Stream rng(5);
    for (int i = 0; i < 40; ++i) many.push_back(1 + rng.uniform(100));
    PartitionFamily f2 = color_coding(many, 8, 1000, Stream(17));
    for (Value j = 0; j < f2.params.r; ++j) {
        std::vector<int> hits(many.size(), 0);
        for (const auto& [cell, m] : f2.cells(j)) {
            CHECK(cell < f2.params.m * f2.params.g);
            for (auto it : m) ++hits[it];
        }
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("small_color_coding is the identity layout") {
    std::vector<Value> items{4, 9, 2};
    PartitionFamily fam = small_color_coding(items, 2, 2, 3);
    CHECK(fam.small_path);
    const auto& cells = fam.cells(0);
    REQUIRE(cells.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cells[i].first == i);
        REQUIRE(cells[i].second.size() == 1);
        CHECK(cells[i].second[0] == i);
    }
    // identical across repetitions and sum of maxima = total
    CHECK(fam.cells(0) == fam.cells(2));
    CHECK(family_max_sum(fam, items, 0) == 15);
    CHECK_THROWS(small_color_coding(items, 1, 2, 1));  // 3 > 2 cells
}

TEST_CASE("modified color coding properties") {
    const Value inv_eps = 16, beta = 2;
    std::vector<Value> items;
    Stream rng(9);
    u128 total = 0;
    while (total < 4 * beta * inv_eps + 20) {
        items.push_back(inv_eps + rng.uniform(inv_eps + 1));
        total += items.back();
    }
    PartitionFamily fam = modified_color_coding(items, beta, inv_eps, 1u << 16, Stream(2));
    const std::size_t reps = fam.small_path ? 1 : fam.params.r;
    for (std::size_t j = 0; j < reps; ++j) {
        CHECK(family_max_sum(fam, items, j) >= u128(4) * beta * inv_eps);
        std::vector<int> hits(items.size(), 0);
        for (const auto& [cell, m] : fam.cells(j))
            for (auto it : m) ++hits[it];
        for (int h : hits) CHECK(h == 1);
    }

    // identical seeds give identical families
    PartitionFamily f1 = modified_color_coding(items, beta, inv_eps, 1u << 16, Stream(2));
    CHECK(f1.reps == fam.reps);

    // degenerate k = 2*beta <= 2: one exhaustive partition
    std::vector<Value> tiny{inv_eps, inv_eps, 2 * inv_eps, 2 * inv_eps};
    PartitionFamily ex = modified_color_coding(tiny, 1, inv_eps, 1u << 16, Stream(4));
    CHECK(ex.small_path);
    CHECK(ex.params.r == 1);
    CHECK(ex.cells(0).size() == tiny.size());

    // bad values and insufficient totals are rejected
    CHECK_THROWS(modified_color_coding({inv_eps / 2}, beta, inv_eps, 16, Stream(0)));
    CHECK_THROWS(modified_color_coding({inv_eps}, beta, inv_eps, 16, Stream(0)));
}

TEST_CASE("color coding suites") {
    CHECK(suite_color_coding(80, 21).pass());
    CHECK(suite_coverage_stats(250, 22).pass());
}
