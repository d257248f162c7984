/* Copyright (C) 2026 The trimul authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TRIMUL_MODMATH_HPP
#define TRIMUL_MODMATH_HPP

#include <cstdint>
#include <vector>

namespace trimul {

/// A word-size prime modulus with its precomputed Barrett constant.
///
/// For NTT-friendly moduli (value ≡ 1 mod 2N) two_n_root holds a primitive
/// 2N-th root of unity; it is 0 for plain moduli.
struct Modulus {
    std::uint64_t value = 0;
    std::uint64_t ratio_hi = 0;  // floor(2^128 / value), high word
    std::uint64_t ratio_lo = 0;  // floor(2^128 / value), low word
    std::uint64_t two_n_root = 0;
    int bits = 0;

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.value == b.value; }
};

// Barrett constants only; value need not be prime but must be odd and >= 3.
Modulus make_modulus(std::uint64_t value);

// Requires value prime with value ≡ 1 (mod 2*ring_degree); also finds and
// stores a primitive 2N-th root of unity.
Modulus make_ntt_modulus(std::uint64_t value, std::uint64_t ring_degree);

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    std::uint64_t s = a + b;  // operands < 2^63, no overflow
    return s >= m.value ? s - m.value : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    return a >= b ? a - b : a + m.value - b;
}

inline std::uint64_t mod_neg(std::uint64_t a, const Modulus& m) {
    return a == 0 ? 0 : m.value - a;
}

/// Reduces a 128-bit value mod m with the two-word Barrett constant.
inline std::uint64_t barrett_reduce_128(unsigned __int128 x, const Modulus& m) {
    const std::uint64_t x0 = static_cast<std::uint64_t>(x);
    const std::uint64_t x1 = static_cast<std::uint64_t>(x >> 64);

    // q = low word of floor(x * floor(2^128/m) / 2^128)
    std::uint64_t carry = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x0) * m.ratio_lo) >> 64);
    unsigned __int128 prod = static_cast<unsigned __int128>(x0) * m.ratio_hi;
    std::uint64_t tmp1 = static_cast<std::uint64_t>(prod) + carry;
    std::uint64_t tmp3 = static_cast<std::uint64_t>(prod >> 64) +
                         (tmp1 < carry ? 1u : 0u);

    prod = static_cast<unsigned __int128>(x1) * m.ratio_lo;
    std::uint64_t tmp2 = static_cast<std::uint64_t>(prod);
    std::uint64_t sum = tmp1 + tmp2;
    carry = static_cast<std::uint64_t>(prod >> 64) + (sum < tmp2 ? 1u : 0u);

    std::uint64_t q = x1 * m.ratio_hi + tmp3 + carry;
    std::uint64_t r = x0 - q * m.value;
    return r >= m.value ? r - m.value : r;
}

inline std::uint64_t barrett_reduce_64(std::uint64_t x, const Modulus& m) {
    std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * m.ratio_hi) >> 64);
    std::uint64_t r = x - q * m.value;
    return r >= m.value ? r - m.value : r;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    return barrett_reduce_128(static_cast<unsigned __int128>(a) * b, m);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, const Modulus& m);

// Inverse mod a prime modulus; throws std::invalid_argument when a ≡ 0.
std::uint64_t mod_inv(std::uint64_t a, const Modulus& m);

bool is_prime_u64(std::uint64_t v);

/// Smallest `count` primes p ≡ 1 (mod 2*ring_degree) with p > 2^(word_bits-1),
/// scanning upward. Deterministic for fixed (ring_degree, word_bits).
std::vector<std::uint64_t> generate_ntt_primes(std::uint64_t ring_degree, int word_bits,
                                               std::size_t count);

// Smallest 2N-th root of unity obtained from successive generator candidates.
std::uint64_t find_two_n_root(std::uint64_t prime, std::uint64_t ring_degree);

}  // namespace trimul

#endif
