#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssapx/driver.hpp"
#include "ssapx/gen.hpp"
#include "ssapx/selftest.hpp"
#include "ssapx/witness.hpp"

namespace py = pybind11;
using namespace ssapx;

namespace {

IntSet to_set(const std::vector<Value>& v) {
    Value u = 0;
    for (Value x : v) u = std::max(u, x);
    return IntSet::from_values(v, u);
}

py::dict result_to_dict(const SolveResult& r) {
    py::dict d;
    d["mode"] = r.mode;
    d["value"] = r.value;
    d["witness"] = r.witness;
    d["delta_cert"] = r.delta_cert;
    d["guarantee_upper"] = r.guarantee_upper;
    d["certified"] = r.certified;
    d["exact"] = r.exact;
    d["seed"] = r.seed;
    d["epsilon"] = r.eps;
    d["target"] = r.target;
    d["dense_fired"] = r.dense_fired;
    d["levels_computed"] = r.levels_computed;
    d["sumset_calls"] = r.engine.total_sumset_calls();
    d["wall_ms"] = r.wall_ms;
    if (r.mode == "partition") {
        d["complement"] = r.complement;
        d["complement_sum"] = r.complement_sum;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "near-linear weak approximation for subset sum and partition";

    m.def(
        "dense_sumset",
        [](const std::vector<Value>& a, const std::vector<Value>& b) {
            return dense_sumset(to_set(a), to_set(b)).values();
        },
        py::arg("a"), py::arg("b"),
        "Exact sumset {x+y} via indicator convolution.");

    m.def(
        "sparse_sumset",
        [](const std::vector<Value>& a, const std::vector<Value>& b,
           std::uint64_t seed) {
            return sparse_sumset(to_set(a), to_set(b), Stream(seed)).values();
        },
        py::arg("a"), py::arg("b"), py::arg("seed") = 1,
        "Exact output-sensitive sumset.");

    m.def(
        "mod_reduce",
        [](const std::vector<Value>& z, Value tau) {
            return mod_reduce(to_set(z), tau).values();
        },
        py::arg("z"), py::arg("tau"));

    m.def(
        "sumset_size_at_least",
        [](const std::vector<Value>& a, const std::vector<Value>& b, Value k) {
            return sumset_size_at_least(to_set(a), to_set(b), k).at_least;
        },
        py::arg("a"), py::arg("b"), py::arg("k"),
        "Whether |A+B| >= k, decided without computing A+B in full.");

    m.def(
        "approx_sumset_pair",
        [](const std::vector<Value>& a, const std::vector<Value>& b, Value u,
           Value inv_eps) {
            auto r = approx_sumset_pair(to_set(a).with_universe(u),
                                        to_set(b).with_universe(u), u, inv_eps);
            return py::make_tuple(r.set.values(), r.cert);
        },
        py::arg("a"), py::arg("b"), py::arg("u"), py::arg("inv_eps"),
        "Approximate (A+B)[0,u] with certified additive error <= u/inv_eps.");

    m.def(
        "approx_sumset_many",
        [](const std::vector<std::vector<Value>>& sets, Value u, Value inv_eps) {
            std::vector<IntSet> in;
            in.reserve(sets.size());
            for (const auto& s : sets) in.push_back(to_set(s).with_universe(u));
            auto r = approx_sumset_many(in, u, inv_eps);
            return py::make_tuple(r.set.values(), r.cert);
        },
        py::arg("sets"), py::arg("u"), py::arg("inv_eps"));

    m.def(
        "grid_approximation",
        [](Value w, Value v, Value delta) {
            return grid_approximation(w, v, delta).values();
        },
        py::arg("w"), py::arg("v"), py::arg("delta"));

    m.def(
        "exact_subset_sums",
        [](const std::vector<Value>& items, Value cap) {
            return exact_subset_sums(items, cap).values();
        },
        py::arg("items"), py::arg("cap"),
        "All subset sums up to cap by bit-parallel DP (the validation oracle).");

    m.def(
        "solve_subset_sum",
        [](const std::vector<Value>& items, Value target, double eps,
           std::uint64_t seed, bool value_only) {
            Instance inst{items, target, eps};
            SolveOptions opt;
            opt.seed = seed;
            opt.value_only = value_only;
            return result_to_dict(solve_weak_subset_sum(inst, opt));
        },
        py::arg("items"), py::arg("target"), py::arg("eps"), py::arg("seed") = 12345,
        py::arg("value_only") = false,
        "Weak approximation: (1-eps)*OPT <= sum(Y) <= (1+eps)*t.");

    m.def(
        "solve_partition",
        [](const std::vector<Value>& items, double eps, std::uint64_t seed) {
            SolveOptions opt;
            opt.seed = seed;
            return result_to_dict(solve_partition(items, eps, opt));
        },
        py::arg("items"), py::arg("eps"), py::arg("seed") = 12345,
        "Partition FPTAS via the weak subset-sum scheme at t = sum/2.");

    m.def(
        "generate_instance",
        [](std::size_t n, Value max_x, const std::string& dist, std::uint64_t seed) {
            GenSpec spec;
            spec.n = n;
            spec.max_x = max_x;
            spec.dist = parse_dist(dist);
            spec.seed = seed;
            GenResult g = generate_instance(spec);
            py::dict d;
            d["items"] = g.items;
            if (g.target) d["target"] = *g.target;
            return d;
        },
        py::arg("n"), py::arg("max_x") = Value{1} << 20, py::arg("dist") = "uniform",
        py::arg("seed") = 0);

    m.attr("__version__") = "0.1.0";
}
