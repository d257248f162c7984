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
#ifndef TRIMUL_NTT_HPP
#define TRIMUL_NTT_HPP

#include <cstdint>
#include <vector>

#include "trimul/modmath.hpp"

namespace trimul {

/// Twiddle tables for the negacyclic NTT over one modulus.
///
/// The forward transform maps a polynomial of Z_q[x]/(x^N+1) to its
/// evaluations at the odd powers of the 2N-th root of unity (stored in an
/// internal bit-reversed order); the inverse is its exact inverse.
class NttTable {
public:
    NttTable() = default;
    NttTable(std::uint64_t ring_degree, const Modulus& m);

    std::uint64_t n() const { return n_; }
    const Modulus& modulus() const { return modulus_; }

    void forward(std::uint64_t* row) const;
    void inverse(std::uint64_t* row) const;

private:
    std::uint64_t n_ = 0;
    int log_n_ = 0;
    Modulus modulus_;
    std::vector<std::uint64_t> root_powers_;      // psi^brev(i)
    std::vector<std::uint64_t> inv_root_powers_;  // psi^-brev(i)
    std::uint64_t n_inv_ = 0;
};

/// Reference negacyclic product: schoolbook with reduction by x^N+1, used as
/// the oracle for the pointwise NTT path.
void negacyclic_mul_schoolbook(const std::uint64_t* a, const std::uint64_t* b,
                               std::uint64_t* out, std::size_t n, const Modulus& m);

}  // namespace trimul

#endif
