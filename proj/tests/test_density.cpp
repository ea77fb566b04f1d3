#include "doctest.h"

#include "ssapx/density.hpp"
#include "ssapx/selftest.hpp"

using namespace ssapx;

namespace {
IntSet interval(Value hi) {
    std::vector<Value> v;
    for (Value x = 0; x <= hi; ++x) v.push_back(x);
    return IntSet::from_sorted(std::move(v), hi);
}
}  // namespace

TEST_CASE("brute-force density definition") {
    CHECK_FALSE(is_gamma_dense_bruteforce({1, 1, 1, 1}, 1, 8, 4));
    // one set of size u+1: k = u+1 needs c*gamma sets
    CHECK(is_gamma_dense_bruteforce({9}, 1, 8, 1));        // c*gamma = 1
    CHECK_FALSE(is_gamma_dense_bruteforce({9}, 2, 8, 1));  // c*gamma = 2
    CHECK_FALSE(is_gamma_dense_bruteforce({9}, 4, 8, 4));
}

TEST_CASE("estimate_density: sparse example") {
    // two copies of {0..4}: |B| = 9, and (2^3 - 1) * 1 = 7 < 2*4*1*4 = 32
    std::vector<IntSet> nodes{interval(4), interval(4)};
    DensityStats stats;
    auto v = estimate_density(nodes, 1, 4, DensityConfig{4}, Stream(1), nullptr, &stats);
    CHECK_FALSE(v.dense);
    CHECK(v.sparsity_level == 4);
    CHECK(stats.threshold_queries <= floor_log2(2 * 4 + 1) * 1);
}

TEST_CASE("estimate_density: many full intervals go dense at j=1") {
    // 33 pairs of full [0,4]: |I_1| * (2-1) = 33 >= 2*4*1*4 = 32
    std::vector<IntSet> nodes;
    for (int i = 0; i < 66; ++i) nodes.push_back(interval(4));
    auto v = estimate_density(nodes, 1, 4, DensityConfig{4}, Stream(1));
    REQUIRE(v.dense);
    CHECK(v.indices.size() == 33);
    CHECK(v.size_floor == 2);  // ceil(32/33) + 1
    // the floor is honored by the actual sumsets
    for (std::size_t i : v.indices)
        CHECK(dense_sumset(nodes[2 * i], nodes[2 * i + 1]).size() >= v.size_floor);
}

TEST_CASE("sparse total size bound") {
    CHECK(sparse_total_size_bound(6, 3, 1, 4) == 6 + 4 * 3);
    CHECK(sparse_total_size_bound(4, 1, 4, 4) == 4 + 16 * 3);
    // random sparse collections stay below the bound
    Stream rng(77);
    for (int t = 0; t < 50; ++t) {
        const Value u = 4 + rng.uniform(60);
        const Value gamma = 1 + rng.uniform(3);
        const std::size_t l = 2 * (1 + rng.uniform(6));
        std::vector<IntSet> nodes;
        std::vector<Value> sizes;
        for (std::size_t i = 0; i < l; ++i) {
            std::vector<Value> v{0};
            for (Value x = 0; x < rng.uniform(u); ++x) v.push_back(rng.uniform(u + 1));
            nodes.push_back(IntSet::from_values(std::move(v), u));
        }
        Value total = 0;
        for (std::size_t i = 0; i + 1 < l; i += 2) {
            sizes.push_back(dense_sumset(nodes[i], nodes[i + 1]).size());
            total += sizes.back();
        }
        if (!is_gamma_dense_bruteforce(sizes, gamma, 2 * u, 4))
            CHECK(total <= sparse_total_size_bound(l / 2, gamma, 2 * u, 4));
    }
}

TEST_CASE("grid approximation") {
    CHECK(grid_approximation(10, 20, 5) == IntSet::from_values({10, 15, 20}, 20));
    CHECK(grid_approximation(7, 7, 3) == IntSet::from_values({7}, 7));
    CHECK(grid_approximation(10, 12, 5) == IntSet::from_values({10}, 12));
    CHECK_THROWS(grid_approximation(5, 4, 1));
    CHECK_THROWS(grid_approximation(0, 4, 0));
}

TEST_CASE("grid covers any small-gap sequence two-sidedly") {
    // a set with gaps <= delta spanning [w, v] supports the grid both ways
    Stream rng(31);
    for (int t = 0; t < 30; ++t) {
        const Value delta = 1 + rng.uniform(6);
        const Value w = rng.uniform(40), span = 10 + rng.uniform(50);
        std::vector<Value> seq{w};
        while (seq.back() < w + span) seq.push_back(seq.back() + 1 + rng.uniform(delta));
        IntSet s = IntSet::from_values(seq, seq.back());
        IntSet grid = grid_approximation(w, w + span, delta);
        CHECK(oracle::check_two_sided(grid, s, w, w + span, delta));
    }
}

TEST_CASE("density soundness suite") {
    CHECK(suite_density(120, 33, 4).pass());
}
