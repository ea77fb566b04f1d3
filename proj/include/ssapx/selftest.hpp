#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssapx/density.hpp"
#include "ssapx/intset.hpp"

namespace ssapx {

/// One property suite's tally. A suite passes when it ran at least one check
/// and none failed.
struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string note;
    bool pass() const { return checks > 0 && failures == 0; }
};

namespace oracle {
/// Power-set enumeration of all subset sums (n <= 24); independent of the
/// bit-parallel DP it cross-checks.
IntSet powerset_sums(const std::vector<Value>& items, Value cap);

/// Two-sided approximation check: every exact sum in [lo, hi] has an
/// approximation within delta, and every approximation is within delta of
/// some exact sum (anywhere).
bool check_two_sided(const IntSet& approx, const IntSet& exact, Value lo, Value hi,
                     Value delta);
}  // namespace oracle

// Property suites. Trial counts scale the work; every suite is deterministic
// in its seed.
SuiteResult suite_sumset_differential(std::size_t pairs, std::uint64_t seed);
SuiteResult suite_size_threshold(std::size_t trials, std::uint64_t seed);
SuiteResult suite_mod_claim(std::size_t trials, std::uint64_t seed);
SuiteResult suite_approx_contract(std::size_t trials, std::uint64_t seed);
SuiteResult suite_density(std::size_t trials, std::uint64_t seed, Value c);
SuiteResult suite_color_coding(std::size_t trials, std::uint64_t seed);
SuiteResult suite_coverage_stats(std::size_t trials, std::uint64_t seed);
SuiteResult suite_pipeline_oracle(std::size_t trials, std::uint64_t seed);
SuiteResult suite_witness_roundtrip(std::size_t trials, std::uint64_t seed);
SuiteResult suite_dense_branch(std::size_t trials, std::uint64_t seed);
SuiteResult suite_reduction(std::size_t trials, std::uint64_t seed);
SuiteResult suite_end_to_end(std::size_t trials, std::uint64_t seed);
SuiteResult suite_partition(std::size_t trials, std::uint64_t seed);

/// The full battery at desk scale (the CLI selftest).
std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace ssapx
