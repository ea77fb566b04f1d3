#pragma once

#include <cstdint>
#include <vector>

#include "ssapx/intset.hpp"

namespace ssapx::ntt {

// Number-theoretic transforms modulo 32-bit primes. All convolutions in the
// library go through here so that set membership is decided by exact integer
// arithmetic, never by thresholding floating-point FFT output.
struct Prime {
    std::uint32_t mod;
    std::uint32_t root;      // primitive root
    std::uint32_t max_log;   // transform length limit: 2^max_log
};

inline constexpr Prime kPrimes[4] = {
    {998244353u, 3u, 23u},
    {754974721u, 11u, 24u},
    {167772161u, 3u, 25u},
    {469762049u, 3u, 26u},
};

// In-place radix-2 transform; a.size() must be a power of two within the
// prime's limit.
void transform(std::vector<std::uint32_t>& a, const Prime& p, bool invert);

// Linear convolution of two sequences mod p; result length |a|+|b|-1.
std::vector<std::uint32_t> convolve_mod(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b,
                                        const Prime& p);

// Transform to pointwise domain at a fixed power-of-two length (helper for
// callers that combine several products over the same length).
std::vector<std::uint32_t> forward(const std::vector<std::uint32_t>& seq,
                                   std::size_t len, const Prime& p);
void pointwise_mul_add(std::vector<std::uint32_t>& acc,
                       const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b,
                       std::uint32_t scale, const Prime& p);
std::vector<std::uint32_t> inverse(std::vector<std::uint32_t> freq, const Prime& p);

// Garner reconstruction of residues r[i] mod kPrimes[i] (first n_primes) into
// the unique value below the primes' product.
u128 crt(const std::uint32_t* residues, int n_primes);

}  // namespace ssapx::ntt
