#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssapx/config.hpp"
#include "ssapx/driver.hpp"
#include "ssapx/gen.hpp"
#include "ssapx/instance_io.hpp"
#include "ssapx/selftest.hpp"

namespace {

using namespace ssapx;

int cmd_solve(const std::string& input, double eps, const std::string& mode,
              std::uint64_t seed, bool value_only, bool json) {
    InstanceFile f = read_instance(input);
    SolveOptions opt;
    opt.seed = seed;
    opt.value_only = value_only;
    SolveResult res;
    if (mode == "partition") {
        res = solve_partition(f.items, eps, opt);
    } else {
        if (!f.target)
            throw std::runtime_error(input + ": subset-sum mode needs an 'n t' header");
        Instance inst{f.items, *f.target, eps};
        res = solve_weak_subset_sum(inst, opt);
    }
    ResultDocument doc = ResultDocument::from_solve(res, value_only);
    std::cout << (json ? doc.to_json() : doc.to_text()) << std::flush;
    return res.certified || res.exact ? 0 : 2;
}

int cmd_gen(std::size_t n, Value max_x, const std::string& dist, std::uint64_t seed,
            const std::string& out) {
    GenSpec spec;
    spec.n = n;
    spec.max_x = max_x;
    spec.dist = parse_dist(dist);
    spec.seed = seed;
    GenResult g = generate_instance(spec);
    write_instance(out, g.items, g.target);
    std::cout << "wrote " << g.items.size() << " items to " << out;
    if (g.target) std::cout << " (t=" << *g.target << ")";
    std::cout << "\n";
    return 0;
}

int cmd_oracle(const std::string& input, double eps, const std::string& check) {
    InstanceFile f = read_instance(input);
    ResultDocument doc = ResultDocument::parse(check);
    const double e = eps > 0 ? eps : doc.eps;
    Value target = 0;
    u128 total = 0;
    for (Value v : f.items) total += v;
    if (doc.mode == "partition" || !f.target)
        target = static_cast<Value>(total / 2);
    else
        target = *f.target;

    std::vector<Value> usable;
    for (Value v : f.items)
        if (v <= target) usable.push_back(v);
    Value opt_val = 0;
    if (!usable.empty()) opt_val = exact_subset_sums(usable, target).max();

    bool ok = true;
    std::ostringstream log;
    if (!doc.value_only) {
        u128 wsum = 0;
        std::vector<bool> used(f.items.size(), false);
        for (auto w : doc.witness) {
            if (w >= f.items.size() || used[w]) {
                ok = false;
                log << "witness index " << w << " invalid or repeated\n";
                break;
            }
            used[w] = true;
            wsum += f.items[w];
        }
        if (wsum != doc.value) {
            ok = false;
            log << "witness sum " << static_cast<Value>(wsum) << " != value " << doc.value
                << "\n";
        }
    }
    const long double upper = (1.0L + e) * static_cast<long double>(target);
    if (static_cast<long double>(doc.value) > upper) {
        ok = false;
        log << "value exceeds (1+eps)*t\n";
    }
    const long double lower = (1.0L - e) * static_cast<long double>(opt_val);
    if (static_cast<long double>(doc.value) < lower) {
        ok = false;
        log << "value below (1-eps)*OPT\n";
    }
    const double ratio =
        opt_val ? static_cast<double>(doc.value) / static_cast<double>(opt_val) : 1.0;
    std::cout << "opt: " << opt_val << "\n"
              << "achieved: " << doc.value << "\n"
              << "ratio: " << ratio << "\n"
              << log.str() << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

int cmd_bench(std::size_t eps_sweep, std::size_t n_sweep, std::size_t repeats,
              const std::string& out_path, std::uint64_t seed) {
    std::ostringstream table;
    table << "sweep\tparam\tmedian_ms\tdoubling_ratio\tdense_frac\tsumset_calls\n";
    auto run_cell = [&](std::size_t n, double eps, double& ms_out, double& dense_out,
                        std::uint64_t& calls_out) {
        std::vector<double> times;
        double dense = 0;
        std::uint64_t calls = 0;
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
            SolveResult res = solve_weak_subset_sum(inst, opt);
            times.push_back(res.wall_ms);
            dense += res.dense_fired ? 1 : 0;
            calls += res.engine.total_sumset_calls();
        }
        ms_out = median(times);
        dense_out = dense / static_cast<double>(repeats);
        calls_out = calls / repeats;
    };

    std::vector<double> eps_ratios, n_ratios;
    double prev = 0;
    for (std::size_t i = 0; i < eps_sweep; ++i) {
        const double inv = 8.0 * static_cast<double>(1ull << i);
        double ms, dense;
        std::uint64_t calls;
        run_cell(64, 1.0 / inv, ms, dense, calls);
        const double ratio = prev > 0 ? ms / prev : 0;
        if (prev > 0) eps_ratios.push_back(ratio);
        prev = ms;
        table << "inv_eps\t" << inv << '\t' << ms << '\t' << ratio << '\t' << dense
              << '\t' << calls << '\n';
    }
    prev = 0;
    for (std::size_t i = 0; i < n_sweep; ++i) {
        const std::size_t n = 64u << i;
        double ms, dense;
        std::uint64_t calls;
        run_cell(n, 1.0 / 8, ms, dense, calls);
        const double ratio = prev > 0 ? ms / prev : 0;
        if (prev > 0) n_ratios.push_back(ratio);
        prev = ms;
        table << "n\t" << n << '\t' << ms << '\t' << ratio << '\t' << dense << '\t'
              << calls << '\n';
    }
    if (!eps_ratios.empty())
        table << "# median doubling ratio (1/eps): " << median(eps_ratios) << "\n";
    if (!n_ratios.empty())
        table << "# median doubling ratio (n): " << median(n_ratios) << "\n";

    if (out_path.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream f(out_path);
        f << table.str();
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_selftest(std::uint64_t seed) {
    auto suites = run_all_suites(seed);
    int bad = 0;
    for (const auto& s : suites) {
        std::printf("%-28s %8llu checks %6llu failures  %s", s.name.c_str(),
                    static_cast<unsigned long long>(s.checks),
                    static_cast<unsigned long long>(s.failures),
                    s.pass() ? "PASS" : "FAIL");
        if (!s.note.empty()) std::printf("  (%s)", s.note.c_str());
        std::printf("\n");
        bad += s.pass() ? 0 : 1;
    }
    return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-linear weak approximation for subset sum and partition"};
    app.require_subcommand(1);

    std::string input, check, out, mode = "subset-sum", dist = "uniform";
    double eps = 0.25, oracle_eps = 0;  // 0: take epsilon from the result document
    std::uint64_t seed = ssapx::default_seed();
    bool value_only = false, json = false;
    std::size_t n = 16, eps_sweep = 6, n_sweep = 6, repeats = 3;
    ssapx::Value max_x = ssapx::Value{1} << 20;

    auto* solve = app.add_subcommand("solve", "approximate an instance file");
    solve->add_option("input", input, "instance file")->required();
    solve->add_option("--epsilon", eps, "accuracy in (0,1)");
    solve->add_option("--mode", mode, "subset-sum | partition")
        ->check(CLI::IsMember({"subset-sum", "partition"}));
    solve->add_option("--seed", seed, "rng seed (default: SSAPX_SEED or 12345)");
    solve->add_flag("--value-only", value_only, "skip witness recovery");
    solve->add_flag("--json", json, "emit JSON instead of text");

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--n", n, "item count")->required();
    gen->add_option("--max-x", max_x, "value ceiling");
    gen->add_option("--dist", dist, "uniform | planted-perfect | two-cluster");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out, "output path")->required();

    auto* oracle = app.add_subcommand("oracle", "exact check of a solve result");
    oracle->add_option("input", input, "instance file")->required();
    oracle->add_option("--epsilon", oracle_eps, "accuracy for the bounds (default: from the document)");
    oracle->add_option("--check", check, "result document to verify")->required();

    auto* bench = app.add_subcommand("bench", "runtime scaling sweeps");
    bench->add_option("--eps-sweep", eps_sweep, "doublings of 1/eps from 8");
    bench->add_option("--n-sweep", n_sweep, "doublings of n from 64");
    bench->add_option("--repeats", repeats, "repetitions per cell");
    bench->add_option("--out", out, "write the table here (default stdout)");

    auto* selftest = app.add_subcommand("selftest", "run the full property battery");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("solve"))
            return cmd_solve(input, eps, mode, seed, value_only, json);
        if (app.got_subcommand("gen")) return cmd_gen(n, max_x, dist, seed, out);
        if (app.got_subcommand("oracle")) return cmd_oracle(input, oracle_eps, check);
        if (app.got_subcommand("bench"))
            return cmd_bench(eps_sweep, n_sweep, repeats, out, seed);
        if (app.got_subcommand("selftest")) return cmd_selftest(seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
