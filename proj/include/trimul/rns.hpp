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
#ifndef TRIMUL_RNS_HPP
#define TRIMUL_RNS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trimul/modmath.hpp"

namespace trimul {

using BigInt = boost::multiprecision::cpp_int;

/// An ordered list of pairwise-distinct NTT-friendly primes.
class RnsBasis {
public:
    RnsBasis() = default;
    RnsBasis(std::uint64_t ring_degree, const std::vector<std::uint64_t>& primes);

    std::size_t size() const { return moduli_.size(); }
    const Modulus& operator[](std::size_t j) const { return moduli_[j]; }
    const std::vector<Modulus>& moduli() const { return moduli_; }
    std::uint64_t ring_degree() const { return n_; }

    /// Product of the first `limbs` moduli (all of them by default).
    BigInt product(std::size_t limbs) const;
    BigInt product() const { return product(moduli_.size()); }

private:
    std::uint64_t n_ = 0;
    std::vector<Modulus> moduli_;
};

/// Exact Chinese-remainder reconstruction over a fixed moduli list.
/// This is the slow, always-correct route used by decryption and by the
/// test oracles; it never feeds the fast conversion path.
class CrtContext {
public:
    CrtContext() = default;
    explicit CrtContext(std::span<const Modulus> moduli);

    std::size_t size() const { return moduli_.size(); }
    const BigInt& modulus_product() const { return product_; }

    /// Unique r in [0, Q) with r = residues[j] mod q_j for every j.
    BigInt reconstruct(std::span<const std::uint64_t> residues) const;

    /// Same value mapped to (-Q/2, Q/2]: r - Q when r >= Q/2.
    BigInt reconstruct_centered(std::span<const std::uint64_t> residues) const;

    BigInt center(BigInt r) const;

private:
    std::vector<Modulus> moduli_;
    BigInt product_;
    std::vector<BigInt> hat_;            // Q/q_j
    std::vector<std::uint64_t> hat_inv_; // (Q/q_j)^-1 mod q_j
};

/// Precomputed tables for the fast (correction-free) conversion of residues
/// from a source basis C to a disjoint target basis B:
///   out_i = sum_j ((v_j * (C_hat_j)^-1) mod c_j) * C_hat_j   mod b_i.
/// The output represents r + alpha*C for some alpha in [0, |C|), where r is
/// the representative of the input in [0, C).
struct FbcTable {
    std::vector<Modulus> src;
    std::vector<Modulus> dst;
    std::vector<std::uint64_t> src_hat_inv;   // (C_hat_j)^-1 mod c_j
    std::vector<std::uint64_t> hat_mod_dst;   // [i * src.size() + j] = C_hat_j mod b_i

    FbcTable() = default;
    FbcTable(std::span<const Modulus> source, std::span<const Modulus> target);
};

/// Converts src_rows x n residues into dst rows; scratch-free interface.
/// src and dst are row-major with row length n.
void fast_basis_convert(const std::uint64_t* src, std::uint64_t* dst, std::size_t n,
                        const FbcTable& table);

}  // namespace trimul

#endif
