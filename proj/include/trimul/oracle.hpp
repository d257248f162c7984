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
#ifndef TRIMUL_ORACLE_HPP
#define TRIMUL_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "trimul/keys.hpp"
#include "trimul/params.hpp"

// Exact big-integer arithmetic for noise measurement. Everything here is
// independent of the NTT/fast-conversion pipeline it is used to judge: plain
// schoolbook convolution, exact CRT, exact rounded division.
namespace trimul::oracle {

/// Negacyclic product of two integer polynomials, exact.
std::vector<BigInt> negacyclic_convolve(std::span<const std::int64_t> a,
                                        std::span<const std::int64_t> b);

/// Exact triple product a*b*c in Z[x]/(x^N+1). Uses a 128-bit schoolbook
/// fast path when the worst-case coefficient bound allows it.
std::vector<BigInt> negacyclic_product3(std::span<const std::int64_t> a,
                                        std::span<const std::int64_t> b,
                                        std::span<const std::int64_t> c);

/// Negacyclic product of a big-integer polynomial with a sparse ternary one.
std::vector<BigInt> convolve_ternary(std::span<const BigInt> a,
                                     std::span<const std::int8_t> ternary);

/// Nearest-integer division, ties away from zero.
BigInt round_div(const BigInt& num, const BigInt& den);

/// Representative of v in (-q/2, q/2].
BigInt center_mod(BigInt v, const BigInt& q);

/// Per-coefficient centered CRT reconstruction over all rows of a
/// coefficient-domain polynomial (q rows, optionally followed by p rows).
std::vector<BigInt> reconstruct_poly(const Params& ctx, const RnsPoly& poly);

/// Evaluates sum_i d_i * s^i exactly, centered mod the active Q. Components
/// may be in either domain; they are reconstructed coefficient-wise first.
std::vector<BigInt> tensor_eval(const Params& ctx, std::span<const RnsPoly> components,
                                const SecretKey& sk);

/// Max |center_mod(a_i - b_i, q)| over all coefficients.
BigInt max_centered_diff(std::span<const BigInt> a, std::span<const BigInt> b,
                         const BigInt& q);

}  // namespace trimul::oracle

#endif
