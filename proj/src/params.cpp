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
#include "trimul/params.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "trimul/kernels.hpp"

namespace trimul {

Params Params::create(const ParamsConfig& cfg_in) {
    ParamsConfig cfg = cfg_in;
    if (!std::has_single_bit(cfg.n) || cfg.n < 4) {
        throw std::invalid_argument("ring degree must be a power of two >= 4");
    }
    if (cfg.q_limbs < 1 || cfg.p_limbs < 1) {
        throw std::invalid_argument("need at least one limb in each basis");
    }
    if (cfg.word_bits < 8 || cfg.word_bits > 61) {
        throw std::invalid_argument("word width out of range [8, 61]");
    }
    if (cfg.scale <= 0.0) cfg.scale = std::ldexp(1.0, cfg.word_bits);
    if (cfg.hamming_weight == 0) cfg.hamming_weight = std::min<std::size_t>(64, cfg.n / 4);
    if (cfg.hamming_weight > cfg.n) {
        throw std::invalid_argument("secret weight exceeds ring degree");
    }
    if (cfg.noise_sigma <= 0.0) {
        throw std::invalid_argument("noise sigma must be positive");
    }

    Params p;
    p.cfg_ = cfg;
    p.log_n_ = std::countr_zero(cfg.n);

    auto primes = generate_ntt_primes(cfg.n, cfg.word_bits, cfg.q_limbs + cfg.p_limbs);
    std::vector<std::uint64_t> q_primes(primes.begin(), primes.begin() + cfg.q_limbs);
    std::vector<std::uint64_t> p_primes(primes.begin() + cfg.q_limbs, primes.end());
    p.q_basis_ = RnsBasis(cfg.n, q_primes);
    p.p_basis_ = RnsBasis(cfg.n, p_primes);

    for (std::size_t j = 0; j < cfg.q_limbs; ++j) p.ntt_q_.emplace_back(cfg.n, p.q_basis_[j]);
    for (std::size_t i = 0; i < cfg.p_limbs; ++i) p.ntt_p_.emplace_back(cfg.n, p.p_basis_[i]);

    BigInt big_p = p.p_basis_.product();
    p.p_mod_q_.resize(cfg.q_limbs);
    p.p_inv_mod_q_.resize(cfg.q_limbs);
    for (std::size_t j = 0; j < cfg.q_limbs; ++j) {
        const Modulus& qj = p.q_basis_[j];
        p.p_mod_q_[j] = static_cast<std::uint64_t>(big_p % qj.value);
        p.p_inv_mod_q_[j] = mod_inv(p.p_mod_q_[j], qj);
    }

    p.levels_.resize(cfg.q_limbs);
    for (std::size_t l = 1; l <= cfg.q_limbs; ++l) {
        Level& lvl = p.levels_[l - 1];
        lvl.limbs = l;
        std::span<const Modulus> q_active(p.q_basis_.moduli().data(), l);
        std::span<const Modulus> p_all(p.p_basis_.moduli().data(), cfg.p_limbs);
        lvl.q_to_p = FbcTable(q_active, p_all);
        lvl.p_to_q = FbcTable(p_all, q_active);
        lvl.crt = CrtContext(q_active);
        if (l >= 2) {
            const Modulus& q_last = p.q_basis_[l - 1];
            lvl.qlast_inv_mod_q.resize(l - 1);
            for (std::size_t j = 0; j + 1 < l; ++j) {
                lvl.qlast_inv_mod_q[j] = mod_inv(q_last.value % p.q_basis_[j].value, p.q_basis_[j]);
            }
        }
    }

    std::vector<Modulus> pq(p.q_basis_.moduli());
    pq.insert(pq.end(), p.p_basis_.moduli().begin(), p.p_basis_.moduli().end());
    p.pq_crt_ = CrtContext(pq);
    return p;
}

Params Params::toy8() {
    ParamsConfig cfg;
    cfg.n = 8;
    cfg.q_limbs = 3;
    cfg.p_limbs = 1;
    cfg.word_bits = 16;
    cfg.scale = std::ldexp(1.0, 12);
    cfg.hamming_weight = 2;
    return create(cfg);
}

Params Params::paper30() {
    ParamsConfig cfg;
    cfg.n = 1ull << 12;
    cfg.q_limbs = 3;
    cfg.p_limbs = 3;
    cfg.word_bits = 30;
    cfg.scale = std::ldexp(1.0, 30);
    cfg.hamming_weight = 64;
    return create(cfg);
}

const Modulus& Params::row_modulus(const RnsPoly& poly, std::size_t row) const {
    if (row < poly.q_rows()) return q_basis_[row];
    return p_basis_[row - poly.q_rows()];
}

const NttTable& Params::row_ntt_table(const RnsPoly& poly, std::size_t row) const {
    if (row < poly.q_rows()) return ntt_q_[row];
    return ntt_p_[row - poly.q_rows()];
}

const Params::Level& Params::level(std::size_t limbs) const {
    if (limbs < 1 || limbs > levels_.size()) {
        throw std::invalid_argument("no such level");
    }
    return levels_[limbs - 1];
}

// ---- polynomial-level operations -------------------------------------

RnsPoly make_poly(const Params& ctx, std::size_t q_rows, std::size_t p_rows, PolyDomain d) {
    if (q_rows > ctx.q_limbs() || p_rows > ctx.p_limbs()) {
        throw std::invalid_argument("row counts exceed the parameter bases");
    }
    return RnsPoly(ctx.n(), q_rows, p_rows, d);
}

void ntt_forward(const Params& ctx, RnsPoly& poly) {
    if (poly.domain() != PolyDomain::coefficient) {
        throw std::invalid_argument("ntt_forward expects coefficient domain");
    }
    const std::size_t rows = poly.rows();
    const bool par = kernels::parallel_enabled() && rows > 1 && ctx.n() >= 1024;
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t j = 0; j < rows; ++j) {
        ctx.row_ntt_table(poly, j).forward(poly.row(j));
    }
    poly.set_domain(PolyDomain::ntt);
}

void ntt_inverse(const Params& ctx, RnsPoly& poly) {
    if (poly.domain() != PolyDomain::ntt) {
        throw std::invalid_argument("ntt_inverse expects ntt domain");
    }
    const std::size_t rows = poly.rows();
    const bool par = kernels::parallel_enabled() && rows > 1 && ctx.n() >= 1024;
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t j = 0; j < rows; ++j) {
        ctx.row_ntt_table(poly, j).inverse(poly.row(j));
    }
    poly.set_domain(PolyDomain::coefficient);
}

RnsPoly to_ntt(const Params& ctx, const RnsPoly& poly) {
    RnsPoly out = poly;
    if (out.domain() == PolyDomain::coefficient) ntt_forward(ctx, out);
    return out;
}

RnsPoly to_coefficient(const Params& ctx, const RnsPoly& poly) {
    RnsPoly out = poly;
    if (out.domain() == PolyDomain::ntt) ntt_inverse(ctx, out);
    return out;
}

RnsPoly poly_add(const Params& ctx, const RnsPoly& a, const RnsPoly& b) {
    require_same_shape(a, b);
    RnsPoly out(a.n(), a.q_rows(), a.p_rows(), a.domain());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        kernels::row_add(a.row(j), b.row(j), out.row(j), a.n(), ctx.row_modulus(a, j));
    }
    return out;
}

RnsPoly poly_sub(const Params& ctx, const RnsPoly& a, const RnsPoly& b) {
    require_same_shape(a, b);
    RnsPoly out(a.n(), a.q_rows(), a.p_rows(), a.domain());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        kernels::row_sub(a.row(j), b.row(j), out.row(j), a.n(), ctx.row_modulus(a, j));
    }
    return out;
}

RnsPoly poly_negate(const Params& ctx, const RnsPoly& a) {
    RnsPoly out(a.n(), a.q_rows(), a.p_rows(), a.domain());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(a, j);
        const std::uint64_t* src = a.row(j);
        std::uint64_t* dst = out.row(j);
        for (std::size_t i = 0; i < a.n(); ++i) dst[i] = mod_neg(src[i], m);
    }
    return out;
}

RnsPoly negacyclic_mul(const Params& ctx, const RnsPoly& a, const RnsPoly& b) {
    require_same_shape(a, b);
    RnsPoly out(a.n(), a.q_rows(), a.p_rows(), a.domain());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(a, j);
        if (a.domain() == PolyDomain::ntt) {
            kernels::row_mul(a.row(j), b.row(j), out.row(j), a.n(), m);
        } else {
            negacyclic_mul_schoolbook(a.row(j), b.row(j), out.row(j), a.n(), m);
        }
    }
    return out;
}

RnsPoly mod_up(const Params& ctx, const RnsPoly& poly) {
    if (poly.domain() != PolyDomain::coefficient) {
        throw std::invalid_argument("mod_up expects coefficient domain");
    }
    if (poly.p_rows() != 0) {
        throw std::invalid_argument("mod_up input already carries auxiliary rows");
    }
    const std::size_t l = poly.q_rows();
    const Params::Level& lvl = ctx.level(l);
    RnsPoly out(poly.n(), l, ctx.p_limbs(), PolyDomain::coefficient);
    std::memcpy(out.row(0), poly.row(0), l * poly.n() * sizeof(std::uint64_t));
    fast_basis_convert(poly.row(0), out.row(l), poly.n(), lvl.q_to_p);
    return out;
}

RnsPoly mod_down(const Params& ctx, const RnsPoly& poly) {
    if (poly.domain() != PolyDomain::coefficient) {
        throw std::invalid_argument("mod_down expects coefficient domain");
    }
    if (poly.p_rows() != ctx.p_limbs()) {
        throw std::invalid_argument("mod_down input lacks the auxiliary rows");
    }
    const std::size_t l = poly.q_rows();
    const Params::Level& lvl = ctx.level(l);
    // b = conv(x mod P) into the active Q basis, then (x - b) / P per row
    std::vector<std::uint64_t> converted(l * poly.n());
    fast_basis_convert(poly.row(l), converted.data(), poly.n(), lvl.p_to_q);
    RnsPoly out(poly.n(), l, 0, PolyDomain::coefficient);
    for (std::size_t j = 0; j < l; ++j) {
        kernels::row_sub_scale(poly.row(j), converted.data() + j * poly.n(),
                               ctx.p_inv_mod_q(j), out.row(j), poly.n(), ctx.q_basis()[j]);
    }
    return out;
}

RnsPoly rescale_poly(const Params& ctx, const RnsPoly& poly) {
    if (poly.domain() != PolyDomain::coefficient) {
        throw std::invalid_argument("rescale expects coefficient domain");
    }
    if (poly.p_rows() != 0) {
        throw std::invalid_argument("rescale expects q rows only");
    }
    const std::size_t l = poly.q_rows();
    if (l < 2) {
        throw std::invalid_argument("rescale needs at least two limbs");
    }
    const Params::Level& lvl = ctx.level(l);
    RnsPoly out(poly.n(), l - 1, 0, PolyDomain::coefficient);
    const std::uint64_t* last = poly.row(l - 1);
    std::vector<std::uint64_t> last_mod_qj(poly.n());
    for (std::size_t j = 0; j + 1 < l; ++j) {
        const Modulus& qj = ctx.q_basis()[j];
        // reduce the dropped row into q_j before the subtraction
        for (std::size_t i = 0; i < poly.n(); ++i) {
            last_mod_qj[i] = barrett_reduce_64(last[i], qj);
        }
        kernels::row_sub_scale(poly.row(j), last_mod_qj.data(), lvl.qlast_inv_mod_q[j],
                               out.row(j), poly.n(), qj);
    }
    return out;
}

RnsPoly drop_last_limb(const Params& ctx, const RnsPoly& poly) {
    (void)ctx;
    if (poly.p_rows() != 0) {
        throw std::invalid_argument("drop_last_limb expects q rows only");
    }
    if (poly.q_rows() < 2) {
        throw std::invalid_argument("cannot drop the only limb");
    }
    RnsPoly out(poly.n(), poly.q_rows() - 1, 0, poly.domain());
    std::memcpy(out.row(0), poly.row(0), out.rows() * poly.n() * sizeof(std::uint64_t));
    return out;
}

}  // namespace trimul
