#include "ssapx/gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "ssapx/rng.hpp"

namespace ssapx {

GenResult generate_instance(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
    if (spec.max_x < 1) throw std::invalid_argument("generate_instance: max_x must be >= 1");
    Stream rng = derive_stream(spec.seed, {static_cast<std::uint64_t>(spec.dist)});
    GenResult out;
    out.items.reserve(spec.n);
    switch (spec.dist) {
        case GenSpec::Dist::uniform: {
            u128 sum = 0;
            for (std::size_t i = 0; i < spec.n; ++i) {
                Value v = 1 + rng.uniform(spec.max_x);
                out.items.push_back(v);
                sum += v;
            }
            // Target anywhere between the largest item and the total keeps the
            // instances nontrivial in both directions.
            const Value hi = static_cast<Value>(sum);
            const Value lo = *std::max_element(out.items.begin(), out.items.end());
            out.target = lo + rng.uniform(hi > lo ? hi - lo + 1 : 1);
            break;
        }
        case GenSpec::Dist::planted_perfect: {
            // Duplicated pairs: one copy per side is a perfect partition.
            for (std::size_t i = 0; i + 1 < spec.n; i += 2) {
                Value v = 1 + rng.uniform(spec.max_x);
                out.items.push_back(v);
                out.items.push_back(v);
            }
            if (out.items.empty()) out.items = {1 + rng.uniform(spec.max_x)};
            break;  // partition format: no target
        }
        case GenSpec::Dist::two_cluster: {
            // Large items near max_x next to a dust cloud of tiny ones, so the
            // small-item merging stage has real work to do.
            const Value dust = std::max<Value>(1, spec.max_x / 1024);
            u128 sum = 0;
            for (std::size_t i = 0; i < spec.n; ++i) {
                Value v = (i % 2 == 0) ? spec.max_x / 2 + rng.uniform(spec.max_x / 2 + 1)
                                       : 1 + rng.uniform(dust);
                out.items.push_back(v);
                sum += v;
            }
            out.target = static_cast<Value>(sum / 2);
            break;
        }
    }
    return out;
}

GenSpec::Dist parse_dist(const std::string& name) {
    if (name == "uniform") return GenSpec::Dist::uniform;
    if (name == "planted-perfect") return GenSpec::Dist::planted_perfect;
    if (name == "two-cluster") return GenSpec::Dist::two_cluster;
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

}  // namespace ssapx
