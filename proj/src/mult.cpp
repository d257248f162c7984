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
#include "trimul/mult.hpp"

#include <cstring>
#include <stdexcept>

#include "trimul/kernels.hpp"

namespace trimul {

namespace {

struct NttPair {
    RnsPoly c0, c1;
};

NttPair to_ntt_pair(const Params& ctx, const Ciphertext& ct, OpCounters* ops) {
    NttPair p;
    if (ct.c0.domain() == PolyDomain::coefficient) {
        p.c0 = ct.c0;
        ntt_forward(ctx, p.c0);
        if (ops) ++ops->ntt_calls;
    } else {
        p.c0 = ct.c0;
    }
    if (ct.c1.domain() == PolyDomain::coefficient) {
        p.c1 = ct.c1;
        ntt_forward(ctx, p.c1);
        if (ops) ++ops->ntt_calls;
    } else {
        p.c1 = ct.c1;
    }
    return p;
}

void require_levels(const Ciphertext& a, const Ciphertext& b) {
    if (a.level != b.level) throw std::invalid_argument("ciphertext level mismatch");
}

RnsPoly pointwise(const Params& ctx, const RnsPoly& a, const RnsPoly& b, OpCounters* ops) {
    if (ops) ++ops->tensor_products;
    return negacyclic_mul(ctx, a, b);
}

/// Pointwise product of an extended poly (l q-rows + K p-rows) with an
/// evaluation key component stored over the full L+K rows.
RnsPoly evk_mul(const Params& ctx, const RnsPoly& u, const RnsPoly& key, OpCounters* ops) {
    if (u.domain() != PolyDomain::ntt || key.domain() != PolyDomain::ntt) {
        throw std::invalid_argument("evk products run in the ntt domain");
    }
    if (u.p_rows() != ctx.p_limbs() || key.q_rows() != ctx.q_limbs()) {
        throw std::invalid_argument("evk product shape mismatch");
    }
    RnsPoly out(u.n(), u.q_rows(), u.p_rows(), PolyDomain::ntt);
    for (std::size_t j = 0; j < u.q_rows(); ++j) {
        kernels::row_mul(u.row(j), key.row(j), out.row(j), u.n(), ctx.q_basis()[j]);
    }
    for (std::size_t i = 0; i < u.p_rows(); ++i) {
        kernels::row_mul(u.row(u.q_rows() + i), key.row(ctx.q_limbs() + i),
                         out.row(u.q_rows() + i), u.n(), ctx.p_basis()[i]);
    }
    if (ops) ++ops->evk_products;
    return out;
}

/// INTT -> ModUp -> NTT, the extension of one tensor component toward the
/// evaluation-key modulus.
RnsPoly raise_to_pq(const Params& ctx, const RnsPoly& d, OpCounters* ops) {
    RnsPoly c = d;
    ntt_inverse(ctx, c);
    if (ops) ++ops->intt_calls;
    RnsPoly u = mod_up(ctx, c);
    if (ops) ++ops->mod_up_calls;
    ntt_forward(ctx, u);
    if (ops) ++ops->ntt_calls;
    return u;
}

RnsPoly lower_to_q(const Params& ctx, const RnsPoly& prod_ntt, OpCounters* ops) {
    RnsPoly c = prod_ntt;
    ntt_inverse(ctx, c);
    if (ops) ++ops->intt_calls;
    RnsPoly down = mod_down(ctx, c);
    if (ops) ++ops->mod_down_calls;
    return down;
}

RnsPoly intt_copy(const Params& ctx, const RnsPoly& p, OpCounters* ops) {
    RnsPoly c = p;
    ntt_inverse(ctx, c);
    if (ops) ++ops->intt_calls;
    return c;
}

void require_shared_k1(const EvalKey& evk2, const EvalKey& evk3) {
    if (evk2.power != 2 || evk3.power != 3) {
        throw std::invalid_argument("evaluation keys passed in the wrong order");
    }
    if (!(evk2.k1 == evk3.k1)) {
        throw std::invalid_argument("evaluation keys do not share k1");
    }
}

}  // namespace

Tensor2 tensor2(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                OpCounters* ops) {
    require_levels(a, b);
    NttPair x = to_ntt_pair(ctx, a, ops);
    NttPair y = to_ntt_pair(ctx, b, ops);
    Tensor2 t;
    t.level = a.level;
    t.scale = a.scale * b.scale;
    t.d0 = pointwise(ctx, x.c0, y.c0, ops);
    t.d2 = pointwise(ctx, x.c1, y.c1, ops);
    t.d1 = poly_add(ctx, pointwise(ctx, x.c0, y.c1, ops), pointwise(ctx, x.c1, y.c0, ops));
    return t;
}

Tensor2 tensor2_karatsuba(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                          OpCounters* ops) {
    require_levels(a, b);
    NttPair x = to_ntt_pair(ctx, a, ops);
    NttPair y = to_ntt_pair(ctx, b, ops);
    Tensor2 t;
    t.level = a.level;
    t.scale = a.scale * b.scale;
    t.d0 = pointwise(ctx, x.c0, y.c0, ops);
    t.d2 = pointwise(ctx, x.c1, y.c1, ops);
    RnsPoly cross = pointwise(ctx, poly_add(ctx, x.c0, x.c1), poly_add(ctx, y.c0, y.c1), ops);
    t.d1 = poly_sub(ctx, poly_sub(ctx, cross, t.d0), t.d2);
    return t;
}

Tensor3 tensor3(const Params& ctx, const Ciphertext& ct1, const Ciphertext& ct2,
                const Ciphertext& ct3, OpCounters* ops) {
    require_levels(ct1, ct2);
    require_levels(ct2, ct3);
    NttPair x = to_ntt_pair(ctx, ct1, ops);
    NttPair y = to_ntt_pair(ctx, ct2, ops);
    NttPair z = to_ntt_pair(ctx, ct3, ops);

    Tensor3 t;
    t.level = ct1.level;
    t.scale = ct1.scale * ct2.scale * ct3.scale;

    // first Karatsuba stage over the leading pair
    t.f0 = pointwise(ctx, x.c0, y.c0, ops);
    t.f2 = pointwise(ctx, x.c1, y.c1, ops);
    t.f1 = pointwise(ctx, poly_add(ctx, x.c0, x.c1), poly_add(ctx, y.c0, y.c1), ops);
    t.f1 = poly_sub(ctx, poly_sub(ctx, t.f1, t.f0), t.f2);

    // second stage folds in the third ciphertext
    t.d0 = pointwise(ctx, t.f0, z.c0, ops);
    t.d3 = pointwise(ctx, t.f2, z.c1, ops);
    t.g1 = pointwise(ctx, t.f1, z.c1, ops);
    t.g2 = pointwise(ctx, t.f2, z.c0, ops);
    RnsPoly cross =
        pointwise(ctx, poly_add(ctx, t.f0, t.f1), poly_add(ctx, z.c0, z.c1), ops);
    t.d1 = poly_sub(ctx, poly_sub(ctx, cross, t.g1), t.d0);
    t.d2 = poly_add(ctx, t.g1, t.g2);
    return t;
}

Tensor3 tensor3_direct(const Params& ctx, const Ciphertext& ct1, const Ciphertext& ct2,
                       const Ciphertext& ct3, OpCounters* ops) {
    require_levels(ct1, ct2);
    require_levels(ct2, ct3);
    NttPair x = to_ntt_pair(ctx, ct1, ops);
    NttPair y = to_ntt_pair(ctx, ct2, ops);
    NttPair z = to_ntt_pair(ctx, ct3, ops);

    auto triple = [&](const RnsPoly& a, const RnsPoly& b, const RnsPoly& c) {
        return pointwise(ctx, pointwise(ctx, a, b, ops), c, ops);
    };

    Tensor3 t;
    t.level = ct1.level;
    t.scale = ct1.scale * ct2.scale * ct3.scale;
    t.d0 = triple(x.c0, y.c0, z.c0);
    t.d1 = poly_add(ctx, poly_add(ctx, triple(x.c1, y.c0, z.c0), triple(x.c0, y.c1, z.c0)),
                    triple(x.c0, y.c0, z.c1));
    t.d2 = poly_add(ctx, poly_add(ctx, triple(x.c1, y.c1, z.c0), triple(x.c1, y.c0, z.c1)),
                    triple(x.c0, y.c1, z.c1));
    t.d3 = triple(x.c1, y.c1, z.c1);
    return t;
}

Ciphertext relinearize2(const Params& ctx, const Tensor2& t, const EvalKey& evk2,
                        OpCounters* ops) {
    if (evk2.power != 2) throw std::invalid_argument("relinearize2 needs the power-2 key");
    Ciphertext out;
    out.level = t.level;
    out.scale = t.scale;
    if (t.d2.is_zero()) {
        out.c0 = intt_copy(ctx, t.d0, ops);
        out.c1 = intt_copy(ctx, t.d1, ops);
        return out;
    }
    RnsPoly u = raise_to_pq(ctx, t.d2, ops);
    RnsPoly prod0 = evk_mul(ctx, u, evk2.k0, ops);
    RnsPoly prod1 = evk_mul(ctx, u, evk2.k1, ops);
    out.c0 = poly_add(ctx, intt_copy(ctx, t.d0, ops), lower_to_q(ctx, prod0, ops));
    out.c1 = poly_add(ctx, intt_copy(ctx, t.d1, ops), lower_to_q(ctx, prod1, ops));
    return out;
}

Ciphertext relinearize3(const Params& ctx, const Tensor3& t, const EvalKey& evk2,
                        const EvalKey& evk3, OpCounters* ops) {
    require_shared_k1(evk2, evk3);
    Ciphertext out;
    out.level = t.level;
    out.scale = t.scale;
    if (t.d2.is_zero() && t.d3.is_zero()) {
        out.c0 = intt_copy(ctx, t.d0, ops);
        out.c1 = intt_copy(ctx, t.d1, ops);
        return out;
    }
    RnsPoly u2 = raise_to_pq(ctx, t.d2, ops);
    RnsPoly u3 = raise_to_pq(ctx, t.d3, ops);

    // three key products: the shared-k1 branch takes u2+u3 in one go, and
    // the two k0 branches are summed before the single ModDown
    RnsPoly branch0 = poly_add(ctx, evk_mul(ctx, u2, evk2.k0, ops),
                               evk_mul(ctx, u3, evk3.k0, ops));
    RnsPoly branch1 = evk_mul(ctx, poly_add(ctx, u2, u3), evk2.k1, ops);

    out.c0 = poly_add(ctx, intt_copy(ctx, t.d0, ops), lower_to_q(ctx, branch0, ops));
    out.c1 = poly_add(ctx, intt_copy(ctx, t.d1, ops), lower_to_q(ctx, branch1, ops));
    return out;
}

Ciphertext relinearize3_unmerged(const Params& ctx, const Tensor3& t, const EvalKey& evk2,
                                 const EvalKey& evk3, OpCounters* ops) {
    require_shared_k1(evk2, evk3);
    Ciphertext out;
    out.level = t.level;
    out.scale = t.scale;
    RnsPoly u2 = raise_to_pq(ctx, t.d2, ops);
    RnsPoly u3 = raise_to_pq(ctx, t.d3, ops);

    RnsPoly a = evk_mul(ctx, u2, evk2.k0, ops);
    RnsPoly b = evk_mul(ctx, u3, evk3.k0, ops);
    RnsPoly c = evk_mul(ctx, u2, evk2.k1, ops);
    RnsPoly d = evk_mul(ctx, u3, evk3.k1, ops);

    out.c0 = poly_add(ctx, intt_copy(ctx, t.d0, ops),
                      poly_add(ctx, lower_to_q(ctx, a, ops), lower_to_q(ctx, b, ops)));
    out.c1 = poly_add(ctx, intt_copy(ctx, t.d1, ops),
                      poly_add(ctx, lower_to_q(ctx, c, ops), lower_to_q(ctx, d, ops)));
    return out;
}

Ciphertext multiply2(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                     const EvalKey& evk2, OpCounters* ops, bool karatsuba) {
    require_levels(a, b);
    if (a.level < 2) throw std::invalid_argument("multiply2 needs level >= 2");
    Tensor2 t = karatsuba ? tensor2_karatsuba(ctx, a, b, ops) : tensor2(ctx, a, b, ops);
    return ct_rescale(ctx, relinearize2(ctx, t, evk2, ops));
}

Ciphertext multiply3(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                     const Ciphertext& c, const EvalKey& evk2, const EvalKey& evk3,
                     OpCounters* ops) {
    require_levels(a, b);
    require_levels(b, c);
    if (a.level < 3) throw std::invalid_argument("multiply3 needs level >= 3");
    Tensor3 t = tensor3(ctx, a, b, c, ops);
    Ciphertext relin = relinearize3(ctx, t, evk2, evk3, ops);
    return ct_rescale(ctx, ct_rescale(ctx, relin));
}

}  // namespace trimul
