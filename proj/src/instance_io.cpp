#include "ssapx/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ssapx {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

bool parse_u64(const std::string& tok, Value& out) {
    if (tok.empty()) return false;
    Value v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        if (v > (~Value{0} - (c - '0')) / 10) return false;
        v = v * 10 + static_cast<Value>(c - '0');
    }
    out = v;
    return true;
}

}  // namespace

InstanceFile read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string header;
    int line_no = 0;
    while (std::getline(in, header)) {
        ++line_no;
        if (header.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    if (header.empty() && !in) fail(path, line_no, "missing header line");

    std::istringstream hs(header);
    std::vector<std::string> toks;
    std::string tok;
    while (hs >> tok) toks.push_back(tok);
    if (toks.empty() || toks.size() > 2)
        fail(path, line_no, "header must be 'n t' (subset-sum) or 'n' (partition)");
    Value n = 0, t = 0;
    if (!parse_u64(toks[0], n)) fail(path, line_no, "bad item count '" + toks[0] + "'");
    InstanceFile f;
    if (toks.size() == 2) {
        if (!parse_u64(toks[1], t)) fail(path, line_no, "bad target '" + toks[1] + "'");
        f.target = t;
    }

    f.items.reserve(static_cast<std::size_t>(n));
    std::string body_line;
    while (f.items.size() < n && std::getline(in, body_line)) {
        ++line_no;
        std::istringstream bs(body_line);
        while (bs >> tok) {
            Value v = 0;
            if (!parse_u64(tok, v) || v == 0)
                fail(path, line_no, "bad item '" + tok + "' (positive integer expected)");
            if (f.items.size() == n)
                fail(path, line_no, "more items than the header announced");
            f.items.push_back(v);
        }
    }
    if (f.items.size() != n)
        fail(path, line_no, "expected " + std::to_string(n) + " items, got " +
                                std::to_string(f.items.size()));
    return f;
}

void write_instance(const std::string& path, const std::vector<Value>& items,
                    std::optional<Value> target) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << items.size();
    if (target) out << ' ' << *target;
    out << '\n';
    for (std::size_t i = 0; i < items.size(); ++i)
        out << items[i] << ((i + 1) % 16 == 0 || i + 1 == items.size() ? '\n' : ' ');
    if (!out) throw std::runtime_error(path + ": write failed");
}

ResultDocument ResultDocument::from_solve(const SolveResult& r, bool value_only) {
    ResultDocument d;
    d.mode = r.mode;
    d.n = r.n;
    d.target = r.target;
    d.eps = r.eps;
    d.seed = r.seed;
    d.value = r.value;
    d.witness = r.witness;
    d.delta_cert = r.delta_cert;
    d.guarantee_upper = r.guarantee_upper;
    d.guarantee_lower_coeff = 1.0 - r.eps;
    d.certified = r.certified;
    d.exact = r.exact;
    d.value_only = value_only;
    d.complement_sum = r.complement_sum;
    d.wall_ms = r.wall_ms;
    d.levels_computed = r.levels_computed;
    d.dense_fired = r.dense_fired;
    d.sumset_calls = r.engine.total_sumset_calls();
    return d;
}

std::string ResultDocument::to_text() const {
    std::ostringstream o;
    o << "mode: " << mode << '\n';
    o << "n: " << n << '\n';
    o << "t: " << target << '\n';
    o << "epsilon: " << eps << '\n';
    o << "seed: " << seed << '\n';
    o << "value: " << value << '\n';
    o << "witness:";
    for (auto w : witness) o << ' ' << w;
    o << '\n';
    o << "delta_cert: " << delta_cert << '\n';
    o << "guarantee_lower_coeff: " << guarantee_lower_coeff << '\n';
    o << "guarantee_upper: " << guarantee_upper << '\n';
    o << "certified: " << (certified ? 1 : 0) << '\n';
    o << "exact: " << (exact ? 1 : 0) << '\n';
    o << "value_only: " << (value_only ? 1 : 0) << '\n';
    if (mode == "partition") o << "complement_sum: " << complement_sum << '\n';
    o << "wall_ms: " << wall_ms << '\n';
    o << "levels_computed: " << levels_computed << '\n';
    o << "dense_fired: " << (dense_fired ? 1 : 0) << '\n';
    o << "sumset_calls: " << sumset_calls << '\n';
    return o.str();
}

std::string ResultDocument::to_json() const {
    nlohmann::json j;
    j["mode"] = mode;
    j["n"] = n;
    j["t"] = target;
    j["epsilon"] = eps;
    j["seed"] = seed;
    j["value"] = value;
    j["witness"] = witness;
    j["delta_cert"] = delta_cert;
    j["guarantee_lower_coeff"] = guarantee_lower_coeff;
    j["guarantee_upper"] = guarantee_upper;
    j["certified"] = certified;
    j["exact"] = exact;
    j["value_only"] = value_only;
    if (mode == "partition") j["complement_sum"] = complement_sum;
    j["wall_ms"] = wall_ms;
    j["levels_computed"] = levels_computed;
    j["dense_fired"] = dense_fired;
    j["sumset_calls"] = sumset_calls;
    return j.dump(2);
}

ResultDocument ResultDocument::parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    ResultDocument d;
    if (!first.empty() && first[0] == '{') {
        nlohmann::json j;
        in >> j;
        d.mode = j.value("mode", "subset-sum");
        d.n = j.value("n", std::size_t{0});
        d.target = j.value("t", Value{0});
        d.eps = j.value("epsilon", 0.0);
        d.seed = j.value("seed", std::uint64_t{0});
        d.value = j.value("value", Value{0});
        d.witness = j.value("witness", std::vector<std::uint32_t>{});
        d.delta_cert = j.value("delta_cert", Value{0});
        d.guarantee_upper = j.value("guarantee_upper", Value{0});
        d.guarantee_lower_coeff = j.value("guarantee_lower_coeff", 0.0);
        d.certified = j.value("certified", false);
        d.exact = j.value("exact", false);
        d.value_only = j.value("value_only", false);
        d.complement_sum = j.value("complement_sum", Value{0});
        return d;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        const std::string key = line.substr(0, colon);
        std::istringstream rest(line.substr(colon + 1));
        if (key == "mode") rest >> d.mode;
        else if (key == "n") rest >> d.n;
        else if (key == "t") rest >> d.target;
        else if (key == "epsilon") rest >> d.eps;
        else if (key == "seed") rest >> d.seed;
        else if (key == "value") rest >> d.value;
        else if (key == "witness") {
            std::uint32_t w;
            while (rest >> w) d.witness.push_back(w);
        } else if (key == "delta_cert") rest >> d.delta_cert;
        else if (key == "guarantee_lower_coeff") rest >> d.guarantee_lower_coeff;
        else if (key == "guarantee_upper") rest >> d.guarantee_upper;
        else if (key == "certified") { int v; rest >> v; d.certified = v; }
        else if (key == "exact") { int v; rest >> v; d.exact = v; }
        else if (key == "value_only") { int v; rest >> v; d.value_only = v; }
        else if (key == "complement_sum") rest >> d.complement_sum;
    }
    if (d.mode.empty()) fail(path, line_no, "not a result document");
    return d;
}

}  // namespace ssapx
