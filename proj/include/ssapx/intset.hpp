#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ssapx {

using Value = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// A set of distinct non-negative integers in [0, universe_bound], kept
/// strictly increasing. Immutable after construction; cheap to share.
class IntSet {
public:
    IntSet() = default;

    /// Takes a vector already sorted strictly increasing.
    static IntSet from_sorted(std::vector<Value> elems, Value universe_bound) {
        IntSet s;
        s.elems_ = std::move(elems);
        s.universe_ = universe_bound;
        s.check_invariants();
        return s;
    }

    /// Sorts and deduplicates.
    static IntSet from_values(std::vector<Value> elems, Value universe_bound) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        return from_sorted(std::move(elems), universe_bound);
    }

    static IntSet singleton(Value v) { return from_sorted({v}, v); }

    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }
    Value universe_bound() const { return universe_; }
    Value min() const { assert(!empty()); return elems_.front(); }
    Value max() const { assert(!empty()); return elems_.back(); }
    Value operator[](std::size_t i) const { return elems_[i]; }

    bool contains(Value v) const {
        return std::binary_search(elems_.begin(), elems_.end(), v);
    }

    const std::vector<Value>& values() const { return elems_; }
    std::vector<Value>::const_iterator begin() const { return elems_.begin(); }
    std::vector<Value>::const_iterator end() const { return elems_.end(); }

    bool operator==(const IntSet& o) const { return elems_ == o.elems_; }
    bool operator!=(const IntSet& o) const { return !(*this == o); }

    /// Same elements, re-declared universe (must still cover max()).
    IntSet with_universe(Value u) const {
        return from_sorted(elems_, u);
    }

    /// Elements within [lo, hi].
    IntSet clipped(Value lo, Value hi) const {
        std::vector<Value> out;
        for (Value v : elems_)
            if (v >= lo && v <= hi) out.push_back(v);
        return from_sorted(std::move(out), universe_);
    }

private:
    void check_invariants() const {
        for (std::size_t i = 1; i < elems_.size(); ++i) {
            if (elems_[i - 1] >= elems_[i])
                throw std::invalid_argument("IntSet: elements not strictly increasing");
        }
        if (!elems_.empty() && elems_.back() > universe_)
            throw std::invalid_argument("IntSet: element above universe bound");
    }

    std::vector<Value> elems_;
    Value universe_ = 0;
};

inline Value floor_log2(Value x) {
    assert(x > 0);
    Value r = 0;
    while (x >>= 1) ++r;
    return r;
}

inline Value ceil_log2(Value x) {
    assert(x > 0);
    Value f = floor_log2(x);
    return ((Value{1} << f) == x) ? f : f + 1;
}

inline Value next_pow2(Value x) {
    if (x <= 1) return 1;
    return Value{1} << ceil_log2(x);
}

}  // namespace ssapx
