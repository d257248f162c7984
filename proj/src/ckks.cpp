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
#include "trimul/ckks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trimul {

Message encode(const Params& ctx, std::span<const double> z, double scale) {
    if (z.size() > ctx.n()) {
        throw std::invalid_argument("message longer than the ring degree");
    }
    if (scale <= 0.0) throw std::invalid_argument("scale must be positive");
    const double headroom = std::ldexp(1.0, ctx.word_bits() - 2);
    Message msg;
    msg.scale = scale;
    msg.coeffs.assign(ctx.n(), 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double scaled = z[i] * scale;
        if (!(std::abs(scaled) < headroom)) {
            throw std::invalid_argument("encoded coefficient exceeds the headroom 2^(w-2)");
        }
        msg.coeffs[i] = static_cast<std::int64_t>(std::llround(scaled));
    }
    return msg;
}

std::vector<double> decode(const Message& msg) {
    if (msg.scale <= 0.0) throw std::invalid_argument("message has no scale");
    std::vector<double> z(msg.coeffs.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = static_cast<double>(msg.coeffs[i]) / msg.scale;
    }
    return z;
}

RnsPoly message_to_poly(const Params& ctx, const Message& msg, std::size_t q_rows) {
    return embed_signed(ctx, msg.coeffs, q_rows, 0);
}

Ciphertext encrypt(const Params& ctx, const PublicKey& pk, const Message& msg, Rng& rng) {
    const std::size_t l = ctx.q_limbs();
    const std::size_t n = ctx.n();

    std::vector<std::int8_t> v = sample_ternary_zo(rng, n);
    std::vector<std::int32_t> e0 = sample_centered_binomial(rng, n);
    std::vector<std::int32_t> e1 = sample_centered_binomial(rng, n);

    RnsPoly v_poly = embed_signed(ctx, std::vector<std::int64_t>(v.begin(), v.end()), l, 0);
    ntt_forward(ctx, v_poly);

    std::vector<std::int64_t> m_plus_e0(n);
    for (std::size_t i = 0; i < n; ++i) m_plus_e0[i] = msg.coeffs[i] + e0[i];
    RnsPoly c0 = embed_signed(ctx, m_plus_e0, l, 0);
    ntt_forward(ctx, c0);
    c0 = poly_add(ctx, c0, negacyclic_mul(ctx, pk.b, v_poly));

    RnsPoly c1 = embed_signed(ctx, std::vector<std::int64_t>(e1.begin(), e1.end()), l, 0);
    ntt_forward(ctx, c1);
    c1 = poly_add(ctx, c1, negacyclic_mul(ctx, pk.a, v_poly));

    ntt_inverse(ctx, c0);
    ntt_inverse(ctx, c1);
    return Ciphertext{std::move(c0), std::move(c1), l, msg.scale};
}

Ciphertext trivial_encrypt(const Params& ctx, const Message& msg) {
    const std::size_t l = ctx.q_limbs();
    Ciphertext ct;
    ct.c0 = message_to_poly(ctx, msg, l);
    ct.c1 = make_poly(ctx, l, 0, PolyDomain::coefficient);
    ct.level = l;
    ct.scale = msg.scale;
    return ct;
}

std::vector<BigInt> decrypt_exact(const Params& ctx, const SecretKey& sk,
                                  const Ciphertext& ct) {
    if (ct.level < 1) throw std::invalid_argument("ciphertext has no active limbs");
    const std::size_t l = ct.level;
    const std::size_t n = ctx.n();

    RnsPoly c1 = to_ntt(ctx, ct.c1);
    RnsPoly s_active = make_poly(ctx, l, 0, PolyDomain::ntt);
    for (std::size_t j = 0; j < l; ++j) std::copy_n(sk.s_ntt.row(j), n, s_active.row(j));
    RnsPoly t = negacyclic_mul(ctx, c1, s_active);
    t = poly_add(ctx, t, to_ntt(ctx, ct.c0));
    ntt_inverse(ctx, t);

    const CrtContext& crt = ctx.level(l).crt;
    std::vector<BigInt> out(n);
    std::vector<std::uint64_t> residues(l);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < l; ++j) residues[j] = t.row(j)[i];
        out[i] = crt.reconstruct_centered(residues);
    }
    return out;
}

Message decrypt(const Params& ctx, const SecretKey& sk, const Ciphertext& ct) {
    std::vector<BigInt> exact = decrypt_exact(ctx, sk, ct);
    Message msg;
    msg.scale = ct.scale;
    msg.coeffs.resize(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
        if (exact[i] > std::numeric_limits<std::int64_t>::max() ||
            exact[i] < std::numeric_limits<std::int64_t>::min()) {
            throw std::runtime_error("decrypted coefficient exceeds 64-bit message range");
        }
        msg.coeffs[i] = static_cast<std::int64_t>(exact[i]);
    }
    return msg;
}

namespace {
void require_compatible(const Ciphertext& a, const Ciphertext& b) {
    if (a.level != b.level) throw std::invalid_argument("ciphertext level mismatch");
    if (std::abs(a.scale - b.scale) > 1e-6 * std::max(a.scale, b.scale)) {
        throw std::invalid_argument("ciphertext scale mismatch");
    }
}
}  // namespace

Ciphertext ct_add(const Params& ctx, const Ciphertext& a, const Ciphertext& b) {
    require_compatible(a, b);
    RnsPoly a0 = to_coefficient(ctx, a.c0), a1 = to_coefficient(ctx, a.c1);
    RnsPoly b0 = to_coefficient(ctx, b.c0), b1 = to_coefficient(ctx, b.c1);
    return Ciphertext{poly_add(ctx, a0, b0), poly_add(ctx, a1, b1), a.level, a.scale};
}

Ciphertext ct_sub(const Params& ctx, const Ciphertext& a, const Ciphertext& b) {
    require_compatible(a, b);
    RnsPoly a0 = to_coefficient(ctx, a.c0), a1 = to_coefficient(ctx, a.c1);
    RnsPoly b0 = to_coefficient(ctx, b.c0), b1 = to_coefficient(ctx, b.c1);
    return Ciphertext{poly_sub(ctx, a0, b0), poly_sub(ctx, a1, b1), a.level, a.scale};
}

Ciphertext ct_drop_limb(const Params& ctx, const Ciphertext& ct) {
    if (ct.level < 2) throw std::invalid_argument("cannot drop below one limb");
    Ciphertext out;
    out.c0 = drop_last_limb(ctx, to_coefficient(ctx, ct.c0));
    out.c1 = drop_last_limb(ctx, to_coefficient(ctx, ct.c1));
    out.level = ct.level - 1;
    out.scale = ct.scale;
    return out;
}

Ciphertext ct_rescale(const Params& ctx, const Ciphertext& ct) {
    if (ct.level < 2) throw std::invalid_argument("rescale needs at least two limbs");
    const double q_last = static_cast<double>(ctx.q_basis()[ct.level - 1].value);
    Ciphertext out;
    out.c0 = rescale_poly(ctx, to_coefficient(ctx, ct.c0));
    out.c1 = rescale_poly(ctx, to_coefficient(ctx, ct.c1));
    out.level = ct.level - 1;
    out.scale = ct.scale / q_last;
    return out;
}

}  // namespace trimul
