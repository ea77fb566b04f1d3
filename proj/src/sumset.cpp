#include "ssapx/sumset.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>

#include "ssapx/ntt.hpp"

namespace ssapx {

namespace {

constexpr std::size_t kSchoolbookCap = 2048;   // |A|*|B| at or below: direct enumeration
constexpr Value kDenseUniverseFloor = 4096;    // universe at or below: always dense

void require_nonempty(const IntSet& a, const IntSet& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("sumset: empty input set");
}

Value bit_length(u128 x) {
    Value n = 0;
    while (x) { x >>= 1; ++n; }
    return n;
}

// dst |= src << shift, in word-granular bitset form.
void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                Value shift) {
    const std::size_t word = shift / 64, bit = shift % 64;
    if (bit == 0) {
        for (std::size_t i = 0; i < src.size() && word + i < dst.size(); ++i)
            dst[word + i] |= src[i];
    } else {
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (word + i < dst.size()) dst[word + i] |= src[i] << bit;
            if (word + i + 1 < dst.size()) dst[word + i + 1] |= src[i] >> (64 - bit);
        }
    }
}

IntSet bitset_sumset(const IntSet& small, const IntSet& big, Value u_out) {
    std::vector<std::uint64_t> big_bits(big.max() / 64 + 1, 0);
    for (Value v : big) big_bits[v / 64] |= 1ull << (v % 64);
    std::vector<std::uint64_t> out(u_out / 64 + 1, 0);
    for (Value a : small) or_shifted(out, big_bits, a);
    std::vector<Value> elems;
    for (std::size_t w = 0; w < out.size(); ++w) {
        std::uint64_t bits = out[w];
        while (bits) {
            unsigned tz = static_cast<unsigned>(__builtin_ctzll(bits));
            elems.push_back(64 * w + tz);
            bits &= bits - 1;
        }
    }
    return IntSet::from_sorted(std::move(elems), u_out);
}

IntSet ntt_support_sumset(const IntSet& a, const IntSet& b, Value u_out,
                          EngineStats* stats) {
    // Representation counts fit below the prime, so a single transform is
    // exact: a coefficient is zero iff no pair sums there.
    const ntt::Prime& p = ntt::kPrimes[1];
    assert(std::min(a.size(), b.size()) < p.mod);
    std::vector<std::uint32_t> fa(static_cast<std::size_t>(a.max()) + 1, 0);
    std::vector<std::uint32_t> fb(static_cast<std::size_t>(b.max()) + 1, 0);
    for (Value v : a) fa[static_cast<std::size_t>(v)] = 1;
    for (Value v : b) fb[static_cast<std::size_t>(v)] = 1;
    auto conv = ntt::convolve_mod(fa, fb, p);
    if (stats) stats->ntt_transforms += 3;
    std::vector<Value> elems;
    for (std::size_t i = 0; i < conv.size(); ++i)
        if (conv[i]) elems.push_back(i);
    return IntSet::from_sorted(std::move(elems), u_out);
}

}  // namespace

namespace detail {

IntSet schoolbook_sumset(const IntSet& a, const IntSet& b) {
    std::vector<Value> sums;
    sums.reserve(a.size() * b.size());
    for (Value x : a)
        for (Value y : b) sums.push_back(x + y);
    return IntSet::from_values(std::move(sums), a.max() + b.max());
}

IntSet round_down_to_step(const IntSet& s, Value step, Value hi) {
    std::vector<Value> out;
    out.reserve(s.size());
    for (Value v : s) {
        Value r = v / step * step;
        if (r <= hi) out.push_back(r);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return IntSet::from_sorted(std::move(out), hi);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto mul = [&](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(u128(x) * y % n);
    };
    auto powm = [&](std::uint64_t base, std::uint64_t exp) {
        std::uint64_t r = 1;
        base %= n;
        while (exp) {
            if (exp & 1) r = mul(r, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return r;
    };
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powm(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul(x, x);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

IntSet dense_sumset(const IntSet& a, const IntSet& b, EngineStats* stats) {
    require_nonempty(a, b);
    if (stats) ++stats->dense_calls;
    const Value u_out = a.max() + b.max();
    if (a.size() * b.size() <= kSchoolbookCap)
        return detail::schoolbook_sumset(a, b);
    if (a.size() == 1) {
        std::vector<Value> e(b.values());
        for (Value& v : e) v += a.min();
        return IntSet::from_sorted(std::move(e), u_out);
    }
    if (b.size() == 1) return dense_sumset(b, a, nullptr);

    const IntSet& small = a.size() <= b.size() ? a : b;
    const IntSet& big = a.size() <= b.size() ? b : a;
    const double bitset_cost = double(small.size()) * (double(u_out) / 64.0 + 1);
    std::size_t ntt_len = 1;
    while (ntt_len < u_out + 1) ntt_len <<= 1;
    const double ntt_cost = 3.0 * double(ntt_len) * double(floor_log2(ntt_len) + 1);
    const bool ntt_fits = ntt_len <= (std::size_t{1} << ntt::kPrimes[1].max_log);
    if (!ntt_fits || bitset_cost < ntt_cost)
        return bitset_sumset(small, big, u_out);
    return ntt_support_sumset(a, b, u_out, stats);
}

IntSet mod_reduce(const IntSet& z, Value tau) {
    if (tau < 1) throw std::invalid_argument("mod_reduce: tau must be >= 1");
    std::vector<Value> out;
    out.reserve(z.size());
    for (Value v : z) out.push_back(v % tau);
    return IntSet::from_values(std::move(out), tau == 1 ? 0 : tau - 1);
}

namespace {

// One hashed-recovery round of the sparse engine. Bins both sets modulo a
// prime p and convolves counts, value sums and value squares; a residue whose
// second moment matches a point mass certifies exactly one sum value there,
// together with its representation count.
struct SparseState {
    std::vector<std::pair<Value, u128>> recovered;  // (value, representation count)
    u128 total = 0;
};

void sparse_round(const IntSet& a, const IntSet& b, std::uint64_t p,
                  int np_g, int np_g1, int np_g2, SparseState& st,
                  EngineStats* stats) {
    const std::size_t psz = static_cast<std::size_t>(p);
    std::size_t len = 1;
    while (len < 2 * psz - 1) len <<= 1;

    std::vector<std::uint32_t> count_a(psz, 0), count_b(psz, 0);
    for (Value v : a) ++count_a[static_cast<std::size_t>(v % p)];
    for (Value v : b) ++count_b[static_cast<std::size_t>(v % p)];

    std::vector<u128> g(psz, 0), gp(psz, 0), gpp(psz, 0);
    std::array<std::vector<std::uint32_t>, 4> res_g, res_gp, res_gpp;

    for (int q = 0; q < np_g2; ++q) {
        const ntt::Prime& prime = ntt::kPrimes[q];
        std::vector<std::uint32_t> wa(psz, 0), wb(psz, 0), va(psz, 0), vb(psz, 0);
        auto bin = [&](const IntSet& s, std::vector<std::uint32_t>& w,
                       std::vector<std::uint32_t>& v2) {
            for (Value x : s) {
                std::size_t r = static_cast<std::size_t>(x % p);
                std::uint64_t xm = x % prime.mod;
                w[r] = static_cast<std::uint32_t>((w[r] + xm) % prime.mod);
                v2[r] = static_cast<std::uint32_t>(
                    (v2[r] + xm * xm % prime.mod) % prime.mod);
            }
        };
        bin(a, wa, va);
        bin(b, wb, vb);

        auto fca = ntt::forward(count_a, len, prime);
        auto fcb = ntt::forward(count_b, len, prime);
        auto fwa = ntt::forward(wa, len, prime);
        auto fwb = ntt::forward(wb, len, prime);
        auto fva = ntt::forward(va, len, prime);
        auto fvb = ntt::forward(vb, len, prime);
        if (stats) stats->ntt_transforms += 6;

        std::vector<std::uint32_t> acc(len, 0);
        if (q < np_g) {
            std::fill(acc.begin(), acc.end(), 0);
            ntt::pointwise_mul_add(acc, fca, fcb, 1, prime);
            res_g[q] = ntt::inverse(acc, prime);
            if (stats) ++stats->ntt_transforms;
        }
        if (q < np_g1) {
            std::fill(acc.begin(), acc.end(), 0);
            ntt::pointwise_mul_add(acc, fwa, fcb, 1, prime);
            ntt::pointwise_mul_add(acc, fca, fwb, 1, prime);
            res_gp[q] = ntt::inverse(acc, prime);
            if (stats) ++stats->ntt_transforms;
        }
        std::fill(acc.begin(), acc.end(), 0);
        ntt::pointwise_mul_add(acc, fva, fcb, 1, prime);
        ntt::pointwise_mul_add(acc, fwa, fwb, 2, prime);
        ntt::pointwise_mul_add(acc, fca, fvb, 1, prime);
        res_gpp[q] = ntt::inverse(acc, prime);
        if (stats) ++stats->ntt_transforms;
    }

    // Fold the linear convolution onto cyclic residues and reconstruct.
    auto fold_crt = [&](std::array<std::vector<std::uint32_t>, 4>& res, int np,
                        std::vector<u128>& out) {
        std::uint32_t r[4];
        for (std::size_t y = 0; y < 2 * psz - 1; ++y) {
            for (int q = 0; q < np; ++q) r[q] = res[q][y];
            bool any = false;
            for (int q = 0; q < np; ++q) any |= (r[q] != 0);
            if (!any) continue;
            out[y >= psz ? y - psz : y] += ntt::crt(r, np);
        }
    };
    fold_crt(res_g, np_g, g);
    fold_crt(res_gp, np_g1, gp);
    fold_crt(res_gpp, np_g2, gpp);

    // Subtract the contribution of already certified values; the residuals
    // then describe exactly the still unknown part of the sumset.
    for (const auto& [c, h] : st.recovered) {
        std::size_t y = static_cast<std::size_t>(c % p);
        g[y] -= h;
        gp[y] -= u128(c) * h;
        gpp[y] -= u128(c) * c * h;
    }

    for (std::size_t y = 0; y < psz; ++y) {
        if (g[y] == 0) continue;
        if (gp[y] % g[y] != 0) continue;
        u128 c0 = gp[y] / g[y];
        if (c0 % p != y) continue;
        // Point-mass certificate: the second moment around c0 vanishes iff
        // every pair hashed to this residue sums to exactly c0.
        if (gpp[y] + c0 * c0 * g[y] != 2 * c0 * gp[y]) continue;
        st.recovered.emplace_back(static_cast<Value>(c0), g[y]);
        st.total += g[y];
    }
    if (stats) ++stats->sparse_rounds;
}

}  // namespace

IntSet sparse_sumset(const IntSet& a, const IntSet& b, Stream rng,
                     EngineStats* stats) {
    require_nonempty(a, b);
    if (a.size() * b.size() <= kSchoolbookCap) {
        if (stats) ++stats->schoolbook_calls;
        return detail::schoolbook_sumset(a, b);
    }
    if (stats) ++stats->sparse_calls;
    const Value u_out = a.max() + b.max();
    if (u_out <= kDenseUniverseFloor) return dense_sumset(a, b, stats);

    // Exactness of the certificate arithmetic needs the second moments to
    // stay below the CRT capacity; outside that (enormous) domain we fall
    // back to the dense engine.
    const Value need_bits =
        2 * bit_length(u_out) + bit_length(a.size()) + bit_length(b.size());
    if (need_bits > 116) return dense_sumset(a, b, stats);

    const int np_g = bit_length(u128(a.size()) * b.size()) <= 59 ? 2 : 3;
    const Value g1_bits = bit_length(u_out) + bit_length(u128(a.size()) * b.size());
    const int np_g1 = g1_bits <= 58 ? 2 : (g1_bits <= 86 ? 3 : 4);
    const int np_g2 = need_bits <= 86 ? 3 : 4;

    SparseState st;
    const u128 need = u128(a.size()) * b.size();
    std::uint64_t khat = std::max<std::uint64_t>({a.size(), b.size(), 32});
    int stall = 0;
    for (int round = 0; round < 512; ++round) {
        std::uint64_t remaining =
            khat > st.recovered.size() ? khat - st.recovered.size() : 4;
        std::uint64_t target = std::max<std::uint64_t>(64, 16 * remaining);
        // Once the hash range approaches the universe, dense wins outright.
        if (2 * target >= u_out || 4 * target > (1ull << 22))
            return dense_sumset(a, b, stats);
        std::uint64_t p = target + rng.uniform(target);
        while (!detail::is_prime_u64(p)) ++p;

        std::size_t before = st.recovered.size();
        sparse_round(a, b, p, np_g, np_g1, np_g2, st, stats);
        if (st.total == need) {
            std::vector<Value> elems;
            elems.reserve(st.recovered.size());
            for (const auto& [c, h] : st.recovered) elems.push_back(c);
            return IntSet::from_values(std::move(elems), u_out);
        }
        if (st.recovered.size() == before) {
            if (++stall >= 2) {
                khat *= 2;
                stall = 0;
            }
        } else {
            stall = 0;
        }
    }
    return dense_sumset(a, b, stats);  // unreachable in practice
}

IntSet sparse_sumset(const IntSet& a, const IntSet& b, EngineStats* stats) {
    return sparse_sumset(a, b, Stream(0x517a5e5eu), stats);
}

IntSet sumset(const IntSet& a, const IntSet& b, const SumsetConfig& cfg,
              Stream rng, EngineStats* stats) {
    switch (cfg.engine) {
        case SumsetConfig::Engine::dense:
            return dense_sumset(a, b, stats);
        case SumsetConfig::Engine::sparse:
            return sparse_sumset(a, b, rng, stats);
        case SumsetConfig::Engine::auto_select:
        default: {
            require_nonempty(a, b);
            const Value u_out = a.max() + b.max();
            const u128 est = std::min<u128>(u128(a.size()) * b.size(), u128(u_out) + 1);
            if (u128(u_out) + 1 <= u128(cfg.auto_threshold) * est)
                return dense_sumset(a, b, stats);
            return sparse_sumset(a, b, rng, stats);
        }
    }
}

SizeTestResult sumset_size_at_least(const IntSet& a, const IntSet& b, Value k,
                                    Stream rng, EngineStats* stats) {
    require_nonempty(a, b);
    if (k < 1) throw std::invalid_argument("sumset_size_at_least: k must be >= 1");
    if (stats) ++stats->size_tests;
    // |A+B| >= max(|A|, |B|) always.
    if (a.size() >= k || b.size() >= k) return {true, std::nullopt};

    const Value u_eff = std::max(a.max(), b.max());
    for (Value j = 1;; ++j) {
        const Value tau = Value{1} << j;
        if (tau > u_eff) {
            IntSet full = sparse_sumset(a, b, derive_stream(rng.next_u64(), {j}), stats);
            bool ok = full.size() >= k;
            return {ok, std::move(full)};
        }
        IntSet sj = sparse_sumset(mod_reduce(a, tau), mod_reduce(b, tau),
                                  derive_stream(rng.next_u64(), {j}), stats);
        if (sj.size() >= 2 * k) return {true, std::nullopt};
    }
}

SizeTestResult sumset_size_at_least(const IntSet& a, const IntSet& b, Value k,
                                    EngineStats* stats) {
    return sumset_size_at_least(a, b, k, Stream(0x5123e57u), stats);
}

ApproxSumset approx_sumset_pair(const IntSet& a, const IntSet& b, Value u,
                                Value inv_eps, EngineStats* stats) {
    require_nonempty(a, b);
    if (inv_eps < 2) throw std::invalid_argument("approx_sumset_pair: need 1/eps >= 2");
    if (a.max() > u || b.max() > u)
        throw std::invalid_argument("approx_sumset_pair: input exceeds universe");

    if (2 * inv_eps >= u) {
        // Rounding step would be at most 1: the window sumset is exact.
        IntSet s = dense_sumset(a, b, stats).clipped(0, u);
        return {std::move(s), 0};
    }
    const Value twoe = 2 * inv_eps;
    const Value u2 = (u + twoe - 1) / twoe * twoe;
    const Value step = u2 / twoe;
    IntSet qa = detail::round_down_to_step(a, step, u);
    IntSet qb = detail::round_down_to_step(b, step, u);
    // Work in quotient space so the dense engine sees a tiny universe.
    auto to_q = [&](const IntSet& s) {
        std::vector<Value> q;
        q.reserve(s.size());
        for (Value v : s) q.push_back(v / step);
        return IntSet::from_sorted(std::move(q), twoe);
    };
    IntSet qs = dense_sumset(to_q(qa), to_q(qb), stats);
    std::vector<Value> out;
    for (Value q : qs) {
        Value v = q * step;
        if (v <= u) out.push_back(v);
    }
    return {IntSet::from_sorted(std::move(out), u), 2 * step - 2};
}

ApproxSumset approx_sumset_many(const std::vector<IntSet>& sets, Value u,
                                Value inv_eps, EngineStats* stats) {
    if (sets.empty()) throw std::invalid_argument("approx_sumset_many: no sets");
    if (inv_eps < 2) throw std::invalid_argument("approx_sumset_many: need 1/eps >= 2");
    for (const auto& s : sets) {
        if (s.empty()) throw std::invalid_argument("approx_sumset_many: empty set");
        if (s.max() > u) throw std::invalid_argument("approx_sumset_many: input exceeds universe");
    }
    const std::size_t l = sets.size();

    if (l == 1) {
        if (2 * inv_eps >= u) return {sets[0].clipped(0, u), 0};
        const Value twoe = 2 * inv_eps;
        const Value u2 = (u + twoe - 1) / twoe * twoe;
        const Value step = u2 / twoe;
        return {detail::round_down_to_step(sets[0], step, u), step - 1};
    }
    if (l == 2) return approx_sumset_pair(sets[0], sets[1], u, 2 * inv_eps, stats);

    // Tightened per-node accuracy plus one final re-round keeps both the
    // total error below u/inv_eps and the output size below 8*inv_eps + 1.
    const Value node_inv = 2 * inv_eps * l;
    std::vector<ApproxSumset> cur;
    cur.reserve(l);
    for (const auto& s : sets) cur.push_back({s, 0});
    while (cur.size() > 1) {
        std::vector<ApproxSumset> next;
        next.reserve(cur.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) {
            ApproxSumset m = approx_sumset_pair(cur[i].set, cur[i + 1].set, u, node_inv, stats);
            m.cert += cur[i].cert + cur[i + 1].cert;
            next.push_back(std::move(m));
        }
        if (cur.size() % 2 == 1) next.push_back(std::move(cur.back()));
        cur = std::move(next);
    }
    ApproxSumset root = std::move(cur.front());
    const Value final_inv = 4 * inv_eps;
    if (2 * final_inv < u) {
        const Value twoe = 2 * final_inv;
        const Value u2 = (u + twoe - 1) / twoe * twoe;
        const Value step = u2 / twoe;
        root.set = detail::round_down_to_step(root.set, step, u);
        root.cert += step - 1;
    }
    assert(root.cert <= u / inv_eps);
    return root;
}

}  // namespace ssapx
