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
#ifndef TRIMUL_TESTS_HELPERS_HPP
#define TRIMUL_TESTS_HELPERS_HPP

#include <vector>

#include "trimul/oracle.hpp"
#include "trimul/params.hpp"
#include "trimul/sampling.hpp"

namespace trimul::test {

// mid-size context with an auxiliary modulus comparable to the main one;
// large enough for meaningful end-to-end noise, small enough for fast tests
inline Params mid64() {
    ParamsConfig cfg;
    cfg.n = 64;
    cfg.q_limbs = 3;
    cfg.p_limbs = 3;
    cfg.word_bits = 30;
    cfg.scale = 0x1p30;
    cfg.hamming_weight = 16;
    return Params::create(cfg);
}

inline BigInt random_below(Rng& rng, const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("bound must be positive");
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    while (true) {
        BigInt v = 0;
        for (std::size_t i = 0; i < words; ++i) {
            v <<= 64;
            v += rng.next();
        }
        v >>= (words * 64 - bits);
        if (v < bound) return v;
    }
}

// fills one coefficient slot of every row with the residues of v
inline void set_coeff(const Params& ctx, RnsPoly& poly, std::size_t i, const BigInt& v) {
    for (std::size_t j = 0; j < poly.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(poly, j);
        poly.row(j)[i] = static_cast<std::uint64_t>(v % m.value);
    }
}

inline RnsPoly random_poly(const Params& ctx, Rng& rng, std::size_t q_rows,
                           std::size_t p_rows, PolyDomain d) {
    RnsPoly poly = make_poly(ctx, q_rows, p_rows, d);
    for (std::size_t j = 0; j < poly.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(poly, j);
        for (std::size_t i = 0; i < poly.n(); ++i) {
            poly.row(j)[i] = rng.uniform_below(m.value);
        }
    }
    return poly;
}

inline Ciphertext random_ciphertext(const Params& ctx, Rng& rng, std::size_t level,
                                    double scale) {
    Ciphertext ct;
    ct.c0 = random_poly(ctx, rng, level, 0, PolyDomain::coefficient);
    ct.c1 = random_poly(ctx, rng, level, 0, PolyDomain::coefficient);
    ct.level = level;
    ct.scale = scale;
    return ct;
}

inline std::vector<double> random_reals(Rng& rng, std::size_t n, double bound) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng.next() >> 11) * 0x1p-53;
        z[i] = (2.0 * u - 1.0) * bound;
    }
    return z;
}

}  // namespace trimul::test

#endif
