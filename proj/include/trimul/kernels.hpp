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
#ifndef TRIMUL_KERNELS_HPP
#define TRIMUL_KERNELS_HPP

#include <cstddef>
#include <cstdint>

#include "trimul/modmath.hpp"

// Data-parallel inner loops. Every kernel has an OpenMP variant and a plain
// serial variant; both write each output slot exactly once, so results are
// bit-identical regardless of thread count. The process-wide switch picks
// the variant; tests compare the two directly.
namespace trimul::kernels {

bool parallel_enabled();
void set_parallel(bool enabled);

// out[i] = (a[i] op b[i]) mod m, single residue row of length n
void row_mul_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m);
void row_mul_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m);
void row_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m);

void row_add_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m);
void row_add_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m);
void row_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m);

void row_sub_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m);
void row_sub_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m);
void row_sub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m);

// out[i] = (a[i] * c) mod m for a row constant c
void row_mul_const_serial(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                          std::size_t n, const Modulus& m);
void row_mul_const_parallel(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                            std::size_t n, const Modulus& m);
void row_mul_const(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                   std::size_t n, const Modulus& m);

// out[i] = (c * (a[i] - b[i])) mod m; the rescaling and ModDown inner step
void row_sub_scale_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                          std::uint64_t* out, std::size_t n, const Modulus& m);
void row_sub_scale_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                            std::uint64_t* out, std::size_t n, const Modulus& m);
void row_sub_scale(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                   std::uint64_t* out, std::size_t n, const Modulus& m);

// Fast-basis-conversion accumulation: for each coefficient t,
// out[t] = (sum_j scaled[j*n + t] * hat[j]) mod m, with scaled[j] < source
// modulus and hat[j] < m. Sums are taken in 128-bit then Barrett reduced.
void row_fbc_acc_serial(const std::uint64_t* scaled, const std::uint64_t* hat,
                        std::size_t src_rows, std::uint64_t* out, std::size_t n,
                        const Modulus& m);
void row_fbc_acc_parallel(const std::uint64_t* scaled, const std::uint64_t* hat,
                          std::size_t src_rows, std::uint64_t* out, std::size_t n,
                          const Modulus& m);
void row_fbc_acc(const std::uint64_t* scaled, const std::uint64_t* hat,
                 std::size_t src_rows, std::uint64_t* out, std::size_t n,
                 const Modulus& m);

}  // namespace trimul::kernels

#endif
