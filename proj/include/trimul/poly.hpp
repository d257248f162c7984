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
#ifndef TRIMUL_POLY_HPP
#define TRIMUL_POLY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace trimul {

enum class PolyDomain : std::uint8_t { coefficient = 0, ntt = 1 };

/// A polynomial of Z[x]/(x^N+1) held as residue rows, one per modulus.
///
/// Rows 0..q_rows-1 belong to the ciphertext-modulus basis (lowest limbs
/// first); rows q_rows..q_rows+p_rows-1 belong to the auxiliary basis. Every
/// entry lies in [0, modulus of its row). The domain tag says whether rows
/// hold coefficients or NTT evaluations; mixing tags in arithmetic is an
/// error, enforced by the operations.
class RnsPoly {
public:
    RnsPoly() = default;
    RnsPoly(std::size_t n, std::size_t q_rows, std::size_t p_rows, PolyDomain d)
        : n_(n), q_rows_(q_rows), p_rows_(p_rows), domain_(d),
          data_((q_rows + p_rows) * n, 0) {}

    std::size_t n() const { return n_; }
    std::size_t q_rows() const { return q_rows_; }
    std::size_t p_rows() const { return p_rows_; }
    std::size_t rows() const { return q_rows_ + p_rows_; }
    PolyDomain domain() const { return domain_; }
    void set_domain(PolyDomain d) { domain_ = d; }

    std::uint64_t* row(std::size_t j) { return data_.data() + j * n_; }
    const std::uint64_t* row(std::size_t j) const { return data_.data() + j * n_; }

    std::vector<std::uint64_t>& data() { return data_; }
    const std::vector<std::uint64_t>& data() const { return data_; }

    bool is_zero() const {
        for (std::uint64_t v : data_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const RnsPoly& a, const RnsPoly& b) {
        return a.n_ == b.n_ && a.q_rows_ == b.q_rows_ && a.p_rows_ == b.p_rows_ &&
               a.domain_ == b.domain_ && a.data_ == b.data_;
    }

private:
    std::size_t n_ = 0;
    std::size_t q_rows_ = 0;
    std::size_t p_rows_ = 0;
    PolyDomain domain_ = PolyDomain::coefficient;
    std::vector<std::uint64_t> data_;
};

inline void require_same_shape(const RnsPoly& a, const RnsPoly& b) {
    if (a.n() != b.n() || a.q_rows() != b.q_rows() || a.p_rows() != b.p_rows()) {
        throw std::invalid_argument("polynomial shape mismatch");
    }
    if (a.domain() != b.domain()) {
        throw std::invalid_argument("polynomial domain mismatch");
    }
}

}  // namespace trimul

#endif
