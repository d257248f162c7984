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
#ifndef TRIMUL_PARAMS_HPP
#define TRIMUL_PARAMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "trimul/ntt.hpp"
#include "trimul/poly.hpp"
#include "trimul/rns.hpp"

namespace trimul {

struct ParamsConfig {
    std::uint64_t n = 0;          // ring degree, power of two
    std::size_t q_limbs = 0;      // L
    std::size_t p_limbs = 0;      // K
    int word_bits = 30;           // residue width w
    double scale = 0.0;           // message scale, defaults to 2^word_bits
    std::size_t hamming_weight = 0;  // secret weight h, defaults to min(64, n/4)
    double noise_sigma = 3.2;
};

/// Scheme context: the two prime bases, NTT tables for every modulus, and
/// per-level conversion/rescaling tables. Immutable after construction.
class Params {
public:
    static Params create(const ParamsConfig& cfg);

    // N=8, L=3, K=1, 16-bit primes: small enough for exhaustive oracles.
    static Params toy8();
    // N=2^12, L=K=3, 30-bit primes, scale 2^30.
    static Params paper30();

    std::uint64_t n() const { return cfg_.n; }
    int log_n() const { return log_n_; }
    int word_bits() const { return cfg_.word_bits; }
    std::size_t q_limbs() const { return cfg_.q_limbs; }
    std::size_t p_limbs() const { return cfg_.p_limbs; }
    double scale() const { return cfg_.scale; }
    std::size_t hamming_weight() const { return cfg_.hamming_weight; }
    double noise_sigma() const { return cfg_.noise_sigma; }
    const ParamsConfig& config() const { return cfg_; }

    const RnsBasis& q_basis() const { return q_basis_; }
    const RnsBasis& p_basis() const { return p_basis_; }

    /// Modulus of an extended-poly row: q_j for j < poly.q_rows(), then the
    /// auxiliary primes.
    const Modulus& row_modulus(const RnsPoly& poly, std::size_t row) const;
    const NttTable& row_ntt_table(const RnsPoly& poly, std::size_t row) const;

    std::uint64_t p_mod_q(std::size_t j) const { return p_mod_q_[j]; }
    std::uint64_t p_inv_mod_q(std::size_t j) const { return p_inv_mod_q_[j]; }

    struct Level {
        std::size_t limbs = 0;                      // active q rows
        FbcTable q_to_p;                            // ModUp conversion
        FbcTable p_to_q;                            // ModDown conversion
        std::vector<std::uint64_t> qlast_inv_mod_q; // q_{l-1}^-1 mod q_j, j < l-1
        CrtContext crt;                             // exact reconstruction over active Q
    };
    const Level& level(std::size_t limbs) const;

    const CrtContext& pq_crt() const { return pq_crt_; }
    BigInt q_product(std::size_t limbs) const { return q_basis_.product(limbs); }
    BigInt p_product() const { return p_basis_.product(); }

private:
    ParamsConfig cfg_;
    int log_n_ = 0;
    RnsBasis q_basis_;
    RnsBasis p_basis_;
    std::vector<NttTable> ntt_q_;
    std::vector<NttTable> ntt_p_;
    std::vector<std::uint64_t> p_mod_q_;
    std::vector<std::uint64_t> p_inv_mod_q_;
    std::vector<Level> levels_;  // levels_[l-1] describes l active limbs
    CrtContext pq_crt_;          // across all L+K moduli
};

// ---- polynomial-level operations -------------------------------------

RnsPoly make_poly(const Params& ctx, std::size_t q_rows, std::size_t p_rows, PolyDomain d);

/// In-place transforms over every row. Throw on a domain-tag mismatch.
void ntt_forward(const Params& ctx, RnsPoly& poly);
void ntt_inverse(const Params& ctx, RnsPoly& poly);

RnsPoly to_ntt(const Params& ctx, const RnsPoly& poly);
RnsPoly to_coefficient(const Params& ctx, const RnsPoly& poly);

RnsPoly poly_add(const Params& ctx, const RnsPoly& a, const RnsPoly& b);
RnsPoly poly_sub(const Params& ctx, const RnsPoly& a, const RnsPoly& b);
RnsPoly poly_negate(const Params& ctx, const RnsPoly& a);

/// Negacyclic product. NTT-domain inputs multiply pointwise; coefficient
/// domain inputs go through the schoolbook reference path.
RnsPoly negacyclic_mul(const Params& ctx, const RnsPoly& a, const RnsPoly& b);

/// Extends a coefficient-domain poly over l active q rows by the K auxiliary
/// rows. The q rows pass through verbatim.
RnsPoly mod_up(const Params& ctx, const RnsPoly& poly);

/// Divides by P with rounding slack at most K per coefficient, dropping the
/// auxiliary rows. Coefficient domain.
RnsPoly mod_down(const Params& ctx, const RnsPoly& poly);

/// Drops the last active limb, dividing by it: row j of the result is
/// q_last^-1 * (v_j - v_last) mod q_j. Coefficient domain, needs >= 2 limbs.
RnsPoly rescale_poly(const Params& ctx, const RnsPoly& poly);

/// Drops the last active limb without dividing (plain modulus reduction).
RnsPoly drop_last_limb(const Params& ctx, const RnsPoly& poly);

}  // namespace trimul

#endif
