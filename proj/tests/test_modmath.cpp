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
#include <doctest.h>

#include "helpers.hpp"
#include "trimul/modmath.hpp"

using namespace trimul;

TEST_CASE("mod_add basics") {
    Modulus q17 = make_modulus(17);
    CHECK(mod_add(0, 5, q17) == 5);
    CHECK(mod_add(16, 1, q17) == 0);
    CHECK(mod_sub(0, 1, q17) == 16);
    CHECK(mod_neg(0, q17) == 0);
    CHECK(mod_neg(5, q17) == 12);
}

TEST_CASE("mod_mul basics") {
    Modulus q7 = make_modulus(7);
    CHECK(mod_mul(3, 4, q7) == 5);
    Modulus q17 = make_modulus(17);
    for (std::uint64_t x = 0; x < 17; ++x) CHECK(mod_mul(1, x, q17) == x);
}

TEST_CASE("add/mul agree with the big-integer oracle, exhaustive small primes") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 31ull, 61ull, 97ull}) {
        Modulus m = make_modulus(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                CHECK(mod_add(a, b, m) == static_cast<std::uint64_t>((BigInt(a) + b) % p));
                CHECK(mod_mul(a, b, m) == static_cast<std::uint64_t>((BigInt(a) * b) % p));
            }
        }
    }
}

TEST_CASE("mod_mul randomized against the big-integer oracle at w=30") {
    const std::uint64_t p = generate_ntt_primes(1ull << 12, 30, 1)[0];
    Modulus m = make_modulus(p);
    Rng rng(42);
    for (int t = 0; t < 100000; ++t) {
        const std::uint64_t a = rng.uniform_below(p);
        const std::uint64_t b = rng.uniform_below(p);
        CHECK(mod_mul(a, b, m) == static_cast<std::uint64_t>((BigInt(a) * b) % p));
    }
}

TEST_CASE("barrett_reduce_128 on wide random inputs") {
    Rng rng(7);
    for (std::uint64_t p : {3ull, 65537ull, (1ull << 40) + 117ull, (1ull << 61) - 1}) {
        if ((p & 1) == 0) continue;
        Modulus m = make_modulus(p);
        for (int t = 0; t < 20000; ++t) {
            unsigned __int128 x =
                (static_cast<unsigned __int128>(rng.next()) << 64) | rng.next();
            BigInt big = BigInt(static_cast<std::uint64_t>(x >> 64));
            big <<= 64;
            big += static_cast<std::uint64_t>(x);
            CHECK(barrett_reduce_128(x, m) == static_cast<std::uint64_t>(big % p));
        }
    }
}

TEST_CASE("mod_pow and mod_inv") {
    Modulus m = make_modulus(65537);
    CHECK(mod_pow(3, 0, m) == 1);
    CHECK(mod_pow(3, 1, m) == 3);
    CHECK(mod_pow(2, 16, m) == 65536);
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        std::uint64_t a = 1 + rng.uniform_below(65536);
        CHECK(mod_mul(a, mod_inv(a, m), m) == 1);
    }
    CHECK_THROWS(mod_inv(0, m));
}

TEST_CASE("prime generation is deterministic, sorted and NTT-friendly") {
    const std::uint64_t n = 1ull << 12;
    auto primes = generate_ntt_primes(n, 30, 6);
    REQUIRE(primes.size() == 6);
    std::uint64_t prev = 0;
    for (std::uint64_t p : primes) {
        CHECK(p > (1ull << 29));
        CHECK(p < (1ull << 30));
        CHECK(p % (2 * n) == 1);
        CHECK(is_prime_u64(p));
        CHECK(p > prev);
        prev = p;
    }
    CHECK(primes == generate_ntt_primes(n, 30, 6));
}

TEST_CASE("two_n_root has exact order 2N") {
    for (auto [n, w] : {std::pair<std::uint64_t, int>{8, 16}, {1ull << 12, 30}}) {
        const std::uint64_t p = generate_ntt_primes(n, w, 1)[0];
        Modulus m = make_ntt_modulus(p, n);
        CHECK(mod_pow(m.two_n_root, n, m) == p - 1);     // psi^N = -1
        CHECK(mod_pow(m.two_n_root, 2 * n, m) == 1);
    }
}

TEST_CASE("is_prime_u64 on knowns") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(65537));
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(65536));
    CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to small bases
}
