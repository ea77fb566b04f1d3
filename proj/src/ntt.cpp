#include "ssapx/ntt.hpp"

#include <cassert>
#include <stdexcept>

namespace ssapx::ntt {

namespace {

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % mod);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t mod) {
    std::uint64_t result = 1, b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

}  // namespace

void transform(std::vector<std::uint32_t>& a, const Prime& p, bool invert) {
    const std::size_t n = a.size();
    assert(n && (n & (n - 1)) == 0);
    if (n > (std::size_t{1} << p.max_log))
        throw std::length_error("ntt: transform length exceeds prime capacity");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint32_t w = pow_mod(p.root, (p.mod - 1) / len, p.mod);
        if (invert) w = pow_mod(w, p.mod - 2, p.mod);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint32_t cur = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::uint32_t u = a[i + k];
                std::uint32_t v = mul_mod(a[i + k + len / 2], cur, p.mod);
                a[i + k] = u + v < p.mod ? u + v : u + v - p.mod;
                a[i + k + len / 2] = u >= v ? u - v : u + p.mod - v;
                cur = mul_mod(cur, w, p.mod);
            }
        }
    }

    if (invert) {
        std::uint32_t n_inv = pow_mod(static_cast<std::uint32_t>(n % p.mod), p.mod - 2, p.mod);
        for (auto& x : a) x = mul_mod(x, n_inv, p.mod);
    }
}

std::vector<std::uint32_t> forward(const std::vector<std::uint32_t>& seq,
                                   std::size_t len, const Prime& p) {
    std::vector<std::uint32_t> a(len, 0);
    assert(seq.size() <= len);
    for (std::size_t i = 0; i < seq.size(); ++i) a[i] = seq[i] % p.mod;
    transform(a, p, false);
    return a;
}

void pointwise_mul_add(std::vector<std::uint32_t>& acc,
                       const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b,
                       std::uint32_t scale, const Prime& p) {
    assert(acc.size() == a.size() && a.size() == b.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        std::uint64_t prod = std::uint64_t(a[i]) * b[i] % p.mod;
        prod = prod * scale % p.mod;
        std::uint64_t sum = acc[i] + prod;
        acc[i] = static_cast<std::uint32_t>(sum >= p.mod ? sum - p.mod : sum);
    }
}

std::vector<std::uint32_t> inverse(std::vector<std::uint32_t> freq, const Prime& p) {
    transform(freq, p, true);
    return freq;
}

std::vector<std::uint32_t> convolve_mod(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b,
                                        const Prime& p) {
    if (a.empty() || b.empty()) return {};
    std::size_t out_len = a.size() + b.size() - 1;
    std::size_t len = 1;
    while (len < out_len) len <<= 1;
    auto fa = forward(a, len, p);
    auto fb = forward(b, len, p);
    for (std::size_t i = 0; i < len; ++i)
        fa[i] = mul_mod(fa[i], fb[i], p.mod);
    transform(fa, p, true);
    fa.resize(out_len);
    return fa;
}

u128 crt(const std::uint32_t* residues, int n_primes) {
    // Garner: lift residue by residue.
    u128 result = residues[0];
    u128 prod = kPrimes[0].mod;
    for (int i = 1; i < n_primes; ++i) {
        const std::uint32_t m = kPrimes[i].mod;
        std::uint32_t cur = static_cast<std::uint32_t>(result % m);
        std::uint32_t diff = residues[i] >= cur ? residues[i] - cur
                                                : residues[i] + m - cur;
        std::uint32_t prod_mod = static_cast<std::uint32_t>(prod % m);
        std::uint32_t inv = pow_mod(prod_mod, m - 2, m);
        std::uint32_t t = mul_mod(diff, inv, m);
        result += prod * t;
        prod *= m;
    }
    return result;
}

}  // namespace ssapx::ntt
