#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssapx/intset.hpp"
#include "ssapx/rng.hpp"

namespace ssapx {

/// Engine selection for sumset computation.
///
/// `auto_select` picks dense when the output universe is at most
/// `auto_threshold` times a cheap output-size estimate, sparse otherwise.
struct SumsetConfig {
    enum class Engine { dense, sparse, auto_select };
    Engine engine = Engine::auto_select;
    std::uint64_t auto_threshold = 8;
};

/// Call counters, threaded through the pipeline for reporting.
struct EngineStats {
    std::uint64_t dense_calls = 0;
    std::uint64_t sparse_calls = 0;
    std::uint64_t schoolbook_calls = 0;
    std::uint64_t size_tests = 0;
    std::uint64_t sparse_rounds = 0;
    std::uint64_t ntt_transforms = 0;

    std::uint64_t total_sumset_calls() const {
        return dense_calls + sparse_calls + schoolbook_calls;
    }
    void merge(const EngineStats& o) {
        dense_calls += o.dense_calls;
        sparse_calls += o.sparse_calls;
        schoolbook_calls += o.schoolbook_calls;
        size_tests += o.size_tests;
        sparse_rounds += o.sparse_rounds;
        ntt_transforms += o.ntt_transforms;
    }
};

/// Exact sumset {a+b} by convolution of indicator vectors. Cost scales with
/// the output universe max(A)+max(B).
IntSet dense_sumset(const IntSet& a, const IntSet& b, EngineStats* stats = nullptr);

/// Exact sumset whose cost scales with |A+B| (times polylog of the universe),
/// not with the universe itself. Recovery hashes values modulo random primes
/// and certifies each recovered element before emitting it; randomness only
/// affects the running time, never the output.
IntSet sparse_sumset(const IntSet& a, const IntSet& b, Stream rng,
                     EngineStats* stats = nullptr);
IntSet sparse_sumset(const IntSet& a, const IntSet& b, EngineStats* stats = nullptr);

/// Engine dispatch per SumsetConfig.
IntSet sumset(const IntSet& a, const IntSet& b, const SumsetConfig& cfg,
              Stream rng, EngineStats* stats = nullptr);

/// {z mod tau : z in Z}, deduplicated.
IntSet mod_reduce(const IntSet& z, Value tau);

struct SizeTestResult {
    bool at_least;
    /// Present when the test had to compute A+B in full.
    std::optional<IntSet> full_sumset;
};

/// Decides |A+B| >= k without necessarily computing A+B, by testing the
/// sumsets of A and B reduced modulo 2, 4, 8, ... and stopping early once an
/// intermediate sumset already has 2k elements.
SizeTestResult sumset_size_at_least(const IntSet& a, const IntSet& b, Value k,
                                    Stream rng, EngineStats* stats = nullptr);
SizeTestResult sumset_size_at_least(const IntSet& a, const IntSet& b, Value k,
                                    EngineStats* stats = nullptr);

/// Approximate sumset with a certified additive error bound.
struct ApproxSumset {
    IntSet set;
    Value cert;  // certified two-sided additive error, in value units
};

/// Approximates (A+B)[0,u] with additive error at most u/inv_eps. Elements
/// are rounded down to multiples of u'/(2*inv_eps) before a dense sumset,
/// where u' is u raised to the next multiple of 2*inv_eps; when the rounding
/// step would be at most 1 the sumset is computed exactly. The returned cert
/// is the exact integer error bound actually incurred.
ApproxSumset approx_sumset_pair(const IntSet& a, const IntSet& b, Value u,
                                Value inv_eps, EngineStats* stats = nullptr);

/// Approximates (A_1+...+A_l)[0,u] with additive error at most u/inv_eps by a
/// binary merge tree of approx_sumset_pair calls at a tightened per-node
/// accuracy. Output size is at most 8*inv_eps + 1.
ApproxSumset approx_sumset_many(const std::vector<IntSet>& sets, Value u,
                                Value inv_eps, EngineStats* stats = nullptr);

namespace detail {
/// Round every element down to a multiple of `step`, deduplicate, keep <= hi.
IntSet round_down_to_step(const IntSet& s, Value step, Value hi);
/// Exhaustive pairwise sums; used as the small-input base case and as a test
/// oracle.
IntSet schoolbook_sumset(const IntSet& a, const IntSet& b);
bool is_prime_u64(std::uint64_t n);
}  // namespace detail

}  // namespace ssapx
