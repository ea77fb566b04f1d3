// Acceptance battery: one verdict line per criterion, nonzero exit if any
// blocking criterion fails. The scaling benchmark is advisory and only warns.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ssapx/driver.hpp"
#include "ssapx/gen.hpp"
#include "ssapx/selftest.hpp"

using namespace ssapx;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail,
            bool advisory = false) {
    if (!pass && !advisory) ++g_failures;
    std::printf("criterion %d [%s]: %s%s — %s\n", id, name.c_str(),
                pass ? "PASS" : (advisory ? "WARN" : "FAIL"),
                advisory ? " (advisory)" : "", detail.c_str());
    std::fflush(stdout);
}

std::string tally(const SuiteResult& s) {
    return std::to_string(s.checks) + " checks, " + std::to_string(s.failures) +
           " failures" + (s.note.empty() ? "" : " [" + s.note + "]");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// Median wall time over a few seeded runs of one benchmark cell.
double bench_cell(std::size_t n, double eps, std::uint64_t seed, std::size_t repeats) {
    std::vector<double> times;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
        GenSpec spec;
        spec.n = n;
        spec.max_x = Value{1} << 20;
        spec.dist = GenSpec::Dist::uniform;
        spec.seed = seed + rep;
        GenResult g = generate_instance(spec);
        Instance inst{g.items, *g.target, eps};
        SolveOptions opt;
        opt.seed = seed + rep;
        times.push_back(solve_weak_subset_sum(inst, opt).wall_ms);
    }
    return median(times);
}

}  // namespace

int main() {
    const std::uint64_t seed = 0x5eed2026;

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult s = suite_end_to_end(1000, seed);
        const double secs = seconds_since(t0);
        const bool in_budget = secs <= 300.0;
        report(1, "weak-approximation contract", s.pass() && in_budget,
               tally(s) + ", " + std::to_string(secs) + "s (budget 300s)");
    }
    {
        SuiteResult s = suite_partition(250, seed);
        report(2, "partition FPTAS contract", s.pass(), tally(s));
    }
    {
        SuiteResult s = suite_sumset_differential(10000, seed);
        report(3, "sumset engine equivalence", s.pass(), tally(s));
    }
    {
        SuiteResult a = suite_size_threshold(10000, seed);
        SuiteResult b = suite_mod_claim(10000, seed);
        report(4, "size threshold + mod-doubling claim", a.pass() && b.pass(),
               tally(a) + "; " + tally(b));
    }
    {
        SuiteResult s = suite_density(1000, seed, 4);
        report(5, "density verdict soundness", s.pass(), tally(s));
    }
    {
        SuiteResult a = suite_witness_roundtrip(300, seed);
        SuiteResult b = suite_dense_branch(150, seed);
        report(6, "witness soundness round-trip", a.pass() && b.pass(),
               tally(a) + "; " + tally(b));
    }
    {
        SuiteResult a = suite_coverage_stats(1000, seed);
        SuiteResult b = suite_color_coding(300, seed);
        report(7, "color-coding statistics", a.pass() && b.pass(),
               tally(a) + "; " + tally(b));
    }
    {
        // Advisory near-linear signature: median doubling ratios across the
        // 1/eps and n sweeps.
        std::vector<double> eps_ratios, n_ratios;
        double prev = 0;
        char buf[256];
        for (int i = 0; i < 6; ++i) {
            const double inv = 8.0 * double(1 << i);
            const double ms = bench_cell(64, 1.0 / inv, seed + i, 3);
            if (prev > 0) eps_ratios.push_back(ms / prev);
            prev = ms;
        }
        prev = 0;
        for (int i = 0; i < 6; ++i) {
            const double ms = bench_cell(std::size_t{64} << i, 1.0 / 8, seed + 10 + i, 3);
            if (prev > 0) n_ratios.push_back(ms / prev);
            prev = ms;
        }
        const double er = median(eps_ratios), nr = median(n_ratios);
        std::snprintf(buf, sizeof buf,
                      "median doubling ratio: 1/eps %.2f (<= 2.8), n %.2f (<= 2.5)", er, nr);
        report(8, "scaling benchmark", er <= 2.8 && nr <= 2.5, buf, /*advisory=*/true);
    }

    if (g_failures == 0) std::printf("acceptance: all blocking criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
