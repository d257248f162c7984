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
#include "trimul/modmath.hpp"

#include <bit>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace trimul {

using boost::multiprecision::cpp_int;

Modulus make_modulus(std::uint64_t value) {
    if (value < 3 || (value & 1) == 0) {
        throw std::invalid_argument("modulus must be odd and >= 3");
    }
    if (value >> 62) {
        throw std::invalid_argument("modulus must be below 2^62");
    }
    Modulus m;
    m.value = value;
    m.bits = 64 - std::countl_zero(value);
    cpp_int ratio = (cpp_int(1) << 128) / value;
    m.ratio_lo = static_cast<std::uint64_t>(ratio & 0xffffffffffffffffULL);
    m.ratio_hi = static_cast<std::uint64_t>((ratio >> 64) & 0xffffffffffffffffULL);
    return m;
}

Modulus make_ntt_modulus(std::uint64_t value, std::uint64_t ring_degree) {
    if (!std::has_single_bit(ring_degree)) {
        throw std::invalid_argument("ring degree must be a power of two");
    }
    if (!is_prime_u64(value) || value % (2 * ring_degree) != 1) {
        throw std::invalid_argument("modulus must be prime with value = 1 mod 2N");
    }
    Modulus m = make_modulus(value);
    m.two_n_root = find_two_n_root(value, ring_degree);
    return m;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, const Modulus& m) {
    std::uint64_t r = 1;
    std::uint64_t b = base >= m.value ? barrett_reduce_64(base, m) : base;
    while (exp) {
        if (exp & 1) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, const Modulus& m) {
    if (a >= m.value) a = barrett_reduce_64(a, m);
    if (a == 0) throw std::invalid_argument("no inverse of 0");
    return mod_pow(a, m.value - 2, m);  // modulus prime
}

namespace {

std::uint64_t mulmod_slow(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod_slow(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_slow(r, a, n);
        a = mulmod_slow(a, a, n);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (v == p) return true;
        if (v % p == 0) return false;
    }
    std::uint64_t d = v - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_slow(a, d, v);
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_slow(x, x, v);
            if (x == v - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> generate_ntt_primes(std::uint64_t ring_degree, int word_bits,
                                               std::size_t count) {
    if (word_bits < 4 || word_bits > 61) {
        throw std::invalid_argument("word width out of range [4, 61]");
    }
    const std::uint64_t step = 2 * ring_degree;
    std::uint64_t floor_value = std::uint64_t(1) << (word_bits - 1);
    // first candidate = 1 mod 2N strictly above 2^(w-1)
    std::uint64_t c = (floor_value / step) * step + 1;
    while (c <= floor_value) c += step;
    std::vector<std::uint64_t> primes;
    while (primes.size() < count) {
        if (c >> word_bits) {
            throw std::runtime_error("not enough NTT primes of the requested width");
        }
        if (is_prime_u64(c)) primes.push_back(c);
        c += step;
    }
    return primes;
}

std::uint64_t find_two_n_root(std::uint64_t prime, std::uint64_t ring_degree) {
    Modulus m = make_modulus(prime);
    const std::uint64_t order = 2 * ring_degree;
    const std::uint64_t cofactor = (prime - 1) / order;
    for (std::uint64_t g = 2; g < prime; ++g) {
        std::uint64_t r = mod_pow(g, cofactor, m);
        // 2N is a power of two, so order is exactly 2N iff r^N = -1
        if (mod_pow(r, ring_degree, m) == prime - 1) return r;
    }
    throw std::runtime_error("no 2N-th root of unity found");
}

}  // namespace trimul
