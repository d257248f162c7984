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
#include "trimul/rns.hpp"

#include <set>
#include <stdexcept>

#include "trimul/kernels.hpp"

namespace trimul {

namespace {
std::uint64_t big_mod_u64(const BigInt& v, std::uint64_t m) {
    return static_cast<std::uint64_t>(v % m);
}
}  // namespace

RnsBasis::RnsBasis(std::uint64_t ring_degree, const std::vector<std::uint64_t>& primes)
    : n_(ring_degree) {
    std::set<std::uint64_t> seen;
    moduli_.reserve(primes.size());
    for (std::uint64_t p : primes) {
        if (!seen.insert(p).second) {
            throw std::invalid_argument("basis moduli must be distinct");
        }
        moduli_.push_back(make_ntt_modulus(p, ring_degree));
    }
}

BigInt RnsBasis::product(std::size_t limbs) const {
    if (limbs > moduli_.size()) throw std::invalid_argument("limb count out of range");
    BigInt q = 1;
    for (std::size_t j = 0; j < limbs; ++j) q *= moduli_[j].value;
    return q;
}

CrtContext::CrtContext(std::span<const Modulus> moduli)
    : moduli_(moduli.begin(), moduli.end()) {
    product_ = 1;
    for (const Modulus& m : moduli_) product_ *= m.value;
    hat_.resize(moduli_.size());
    hat_inv_.resize(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        hat_[j] = product_ / moduli_[j].value;
        hat_inv_[j] = mod_inv(big_mod_u64(hat_[j], moduli_[j].value), moduli_[j]);
    }
}

BigInt CrtContext::reconstruct(std::span<const std::uint64_t> residues) const {
    if (residues.size() != moduli_.size()) {
        throw std::invalid_argument("residue count does not match basis");
    }
    BigInt acc = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        acc += hat_[j] * mod_mul(residues[j], hat_inv_[j], moduli_[j]);
    }
    return acc % product_;
}

BigInt CrtContext::center(BigInt r) const {
    if (2 * r >= product_) r -= product_;
    return r;
}

BigInt CrtContext::reconstruct_centered(std::span<const std::uint64_t> residues) const {
    return center(reconstruct(residues));
}

FbcTable::FbcTable(std::span<const Modulus> source, std::span<const Modulus> target)
    : src(source.begin(), source.end()), dst(target.begin(), target.end()) {
    BigInt c = 1;
    for (const Modulus& m : src) c *= m.value;
    src_hat_inv.resize(src.size());
    hat_mod_dst.resize(src.size() * dst.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        BigInt hat = c / src[j].value;
        src_hat_inv[j] = mod_inv(big_mod_u64(hat, src[j].value), src[j]);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            hat_mod_dst[i * src.size() + j] = big_mod_u64(hat, dst[i].value);
        }
    }
}

void fast_basis_convert(const std::uint64_t* src_rows, std::uint64_t* dst_rows,
                        std::size_t n, const FbcTable& table) {
    const std::size_t l = table.src.size();
    // y_j = (v_j * hat_inv_j) mod c_j, then per target row a reduced
    // 128-bit dot product with the hat residues
    std::vector<std::uint64_t> scaled(l * n);
    for (std::size_t j = 0; j < l; ++j) {
        kernels::row_mul_const(src_rows + j * n, table.src_hat_inv[j], scaled.data() + j * n,
                               n, table.src[j]);
    }
    for (std::size_t i = 0; i < table.dst.size(); ++i) {
        kernels::row_fbc_acc(scaled.data(), table.hat_mod_dst.data() + i * l, l,
                             dst_rows + i * n, n, table.dst[i]);
    }
}

}  // namespace trimul
