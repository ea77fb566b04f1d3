#include "doctest.h"

#include "ssapx/selftest.hpp"
#include "ssapx/sumset.hpp"

using namespace ssapx;

namespace {
IntSet mk(std::vector<Value> v) {
    Value u = 0;
    for (Value x : v) u = std::max(u, x);
    return IntSet::from_values(std::move(v), u);
}
}  // namespace

TEST_CASE("dense sumset basics") {
    CHECK(dense_sumset(mk({0, 1}), mk({0, 2})) == mk({0, 1, 2, 3}));
    CHECK(dense_sumset(mk({3, 7, 11}), mk({0})) == mk({3, 7, 11}));
    CHECK(dense_sumset(mk({0, 2, 4}), mk({0, 1})) == mk({0, 1, 2, 3, 4, 5}));
    CHECK_THROWS(dense_sumset(IntSet{}, mk({0})));
}

TEST_CASE("dense engines agree across size regimes") {
    Stream rng(41);
    for (int t = 0; t < 40; ++t) {
        const Value u = Value{1} << (3 + rng.uniform(14));
        std::vector<Value> va, vb;
        for (std::size_t i = 0; i < 1 + rng.uniform(80); ++i) va.push_back(rng.uniform(u));
        for (std::size_t i = 0; i < 1 + rng.uniform(80); ++i) vb.push_back(rng.uniform(u));
        IntSet a = mk(va), b = mk(vb);
        CHECK(dense_sumset(a, b) == detail::schoolbook_sumset(a, b));
    }
}

TEST_CASE("sparse sumset tiny and huge universes") {
    CHECK(sparse_sumset(mk({0, 1000000}), mk({0, 1000000})) ==
          mk({0, 1000000, 2000000}));
    CHECK(sparse_sumset(mk({0}), mk({0})) == mk({0}));
    // genuinely sparse supports in a large universe
    Stream rng(99);
    for (int t = 0; t < 10; ++t) {
        std::vector<Value> va, vb;
        for (int i = 0; i < 90; ++i) va.push_back(rng.uniform(Value{1} << 20));
        for (int i = 0; i < 90; ++i) vb.push_back(rng.uniform(Value{1} << 20));
        IntSet a = mk(va), b = mk(vb);
        CHECK(sparse_sumset(a, b, Stream(t)) == dense_sumset(a, b));
    }
}

TEST_CASE("mod_reduce") {
    CHECK(mod_reduce(mk({3, 5, 9}), 4) == mk({1, 3}));
    CHECK(mod_reduce(mk({3, 5, 9}), 100) == mk({3, 5, 9}));
    CHECK(mod_reduce(mk({0, 7, 14}), 7) == mk({0}));
    CHECK_THROWS(mod_reduce(mk({1}), 0));
}

TEST_CASE("sumset size threshold") {
    std::vector<Value> zeros_to_nine;
    for (Value v = 0; v <= 9; ++v) zeros_to_nine.push_back(v);
    IntSet t = mk(zeros_to_nine);
    auto r19 = sumset_size_at_least(t, t, 19);
    CHECK(r19.at_least);
    auto r20 = sumset_size_at_least(t, t, 20);
    CHECK_FALSE(r20.at_least);
    REQUIRE(r20.full_sumset.has_value());
    CHECK(*r20.full_sumset == dense_sumset(t, t));
    CHECK(sumset_size_at_least(mk({0}), mk({0}), 1).at_least);
}

TEST_CASE("approx pair: rounded grid output") {
    auto r = approx_sumset_pair(mk({0, 3}).with_universe(8),
                                mk({0, 5}).with_universe(8), 8, 2);
    CHECK(r.set == mk({0, 2, 4, 6}));
    CHECK(r.cert == 2);
    for (Value s : {Value{0}, Value{3}, Value{5}, Value{8}}) {
        bool near = false;
        for (Value v : r.set) near |= (v > s ? v - s : s - v) <= 4;
        CHECK(near);
    }
    CHECK(r.set.size() <= 4 * 2 + 1);
}

TEST_CASE("approx pair: no rounding when the step collapses") {
    // step eps*u/2 <= 1 means the window sumset is exact
    auto r = approx_sumset_pair(mk({0, 3, 4}).with_universe(7),
                                mk({0, 2}).with_universe(7), 7, 8);
    CHECK(r.cert == 0);
    CHECK(r.set == dense_sumset(mk({0, 3, 4}), mk({0, 2})).clipped(0, 7));
    auto z = approx_sumset_pair(mk({0}), mk({0}), 4, 2);
    CHECK(z.set == mk({0}));
}

TEST_CASE("approx many: degenerate and pair cases") {
    std::vector<IntSet> one{mk({0, 5, 9}).with_universe(64)};
    auto r1 = approx_sumset_many(one, 64, 2);
    CHECK(r1.set.size() <= 2 * 2 + 1);
    CHECK(r1.cert <= 64 / 2);

    std::vector<IntSet> two{mk({0, 7}).with_universe(64), mk({0, 9}).with_universe(64)};
    auto r2 = approx_sumset_many(two, 64, 4);
    auto direct = approx_sumset_pair(two[0], two[1], 64, 8);
    CHECK(r2.set == direct.set);
    CHECK(r2.cert == direct.cert);
}

TEST_CASE("approx many: four sets against exhaustive sumset") {
    Stream rng(7);
    for (int t = 0; t < 20; ++t) {
        std::vector<IntSet> sets;
        IntSet exact = IntSet::singleton(0);
        for (int i = 0; i < 4; ++i) {
            std::vector<Value> v{0};
            for (int k = 0; k < 4; ++k) v.push_back(rng.uniform(17));
            sets.push_back(mk(std::move(v)).with_universe(64));
            exact = dense_sumset(exact, sets.back());
        }
        auto r = approx_sumset_many(sets, 64, 4);
        CHECK(r.cert <= 16);
        CHECK(oracle::check_two_sided(r.set, exact, 0, 64, 16));
        CHECK(r.set.size() <= 8 * 4 + 1);
    }
}

TEST_CASE("sumset property suites") {
    CHECK(suite_sumset_differential(300, 11).pass());
    CHECK(suite_size_threshold(200, 12).pass());
    CHECK(suite_mod_claim(300, 13).pass());
    CHECK(suite_approx_contract(80, 14).pass());
}
