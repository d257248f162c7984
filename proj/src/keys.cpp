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
#include "trimul/keys.hpp"

#include <algorithm>

#include "trimul/kernels.hpp"

namespace trimul {

RnsPoly embed_signed(const Params& ctx, const std::vector<std::int64_t>& coeffs,
                     std::size_t q_rows, std::size_t p_rows) {
    RnsPoly out = make_poly(ctx, q_rows, p_rows, PolyDomain::coefficient);
    for (std::size_t j = 0; j < out.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(out, j);
        std::uint64_t* row = out.row(j);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const std::int64_t v = coeffs[i];
            if (v >= 0) {
                row[i] = barrett_reduce_64(static_cast<std::uint64_t>(v), m);
            } else {
                row[i] = mod_neg(barrett_reduce_64(static_cast<std::uint64_t>(-v), m), m);
            }
        }
    }
    return out;
}

namespace {

std::vector<std::int64_t> widen(const std::vector<std::int8_t>& v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
}

std::vector<std::int64_t> widen(const std::vector<std::int32_t>& v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
}

RnsPoly sample_uniform_ntt(const Params& ctx, Rng& rng, std::size_t q_rows,
                           std::size_t p_rows) {
    RnsPoly out = make_poly(ctx, q_rows, p_rows, PolyDomain::ntt);
    for (std::size_t j = 0; j < out.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(out, j);
        std::uint64_t* row = out.row(j);
        for (std::size_t i = 0; i < ctx.n(); ++i) row[i] = rng.uniform_below(m.value);
    }
    return out;
}

// scales the q rows of an NTT-domain poly by P mod q_j and zeroes the p rows
RnsPoly scale_by_aux_modulus(const Params& ctx, const RnsPoly& poly) {
    RnsPoly out(poly.n(), poly.q_rows(), poly.p_rows(), poly.domain());
    for (std::size_t j = 0; j < poly.q_rows(); ++j) {
        kernels::row_mul_const(poly.row(j), ctx.p_mod_q(j), out.row(j), poly.n(),
                               ctx.q_basis()[j]);
    }
    // p rows stay zero: P = 0 mod p_i
    return out;
}

EvalKey make_eval_key(const Params& ctx, const RnsPoly& s_ntt, const RnsPoly& shared_k1,
                      const RnsPoly& s_power_ntt, Rng& rng, int power) {
    const std::size_t l = ctx.q_limbs();
    const std::size_t k = ctx.p_limbs();
    RnsPoly err = embed_signed(ctx, widen(sample_centered_binomial(rng, ctx.n())), l, k);
    ntt_forward(ctx, err);

    RnsPoly k0 = poly_sub(ctx, err, negacyclic_mul(ctx, s_ntt, shared_k1));
    k0 = poly_add(ctx, k0, scale_by_aux_modulus(ctx, s_power_ntt));
    return EvalKey{std::move(k0), shared_k1, power};
}

}  // namespace

KeySet keygen(const Params& ctx, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t l = ctx.q_limbs();
    const std::size_t k = ctx.p_limbs();

    KeySet ks;
    ks.sk.coeffs = sample_ternary_fixed_weight(rng, ctx.n(), ctx.hamming_weight());
    ks.sk.s_ntt = embed_signed(ctx, widen(ks.sk.coeffs), l, k);
    ntt_forward(ctx, ks.sk.s_ntt);

    // public key over the q rows only
    RnsPoly s_q = make_poly(ctx, l, 0, PolyDomain::ntt);
    for (std::size_t j = 0; j < l; ++j) {
        std::copy_n(ks.sk.s_ntt.row(j), ctx.n(), s_q.row(j));
    }
    ks.pk.a = sample_uniform_ntt(ctx, rng, l, 0);
    RnsPoly pk_err = embed_signed(ctx, widen(sample_centered_binomial(rng, ctx.n())), l, 0);
    ntt_forward(ctx, pk_err);
    ks.pk.b = poly_sub(ctx, pk_err, negacyclic_mul(ctx, ks.pk.a, s_q));

    RnsPoly shared_k1 = sample_uniform_ntt(ctx, rng, l, k);
    RnsPoly s2 = negacyclic_mul(ctx, ks.sk.s_ntt, ks.sk.s_ntt);
    RnsPoly s3 = negacyclic_mul(ctx, s2, ks.sk.s_ntt);
    ks.evk2 = make_eval_key(ctx, ks.sk.s_ntt, shared_k1, s2, rng, 2);
    ks.evk3 = make_eval_key(ctx, ks.sk.s_ntt, shared_k1, s3, rng, 3);
    return ks;
}

}  // namespace trimul
