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
#include "trimul/kernels.hpp"

#include <atomic>

namespace trimul::kernels {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool enabled) { g_parallel.store(enabled, std::memory_order_relaxed); }

void row_mul_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(a[i], b[i], m);
}

void row_mul_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(a[i], b[i], m);
}

void row_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m) {
    if (parallel_enabled() && n >= 2048) {
        row_mul_parallel(a, b, out, n, m);
    } else {
        row_mul_serial(a, b, out, n, m);
    }
}

void row_add_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_add(a[i], b[i], m);
}

void row_add_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_add(a[i], b[i], m);
}

void row_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m) {
    if (parallel_enabled() && n >= 4096) {
        row_add_parallel(a, b, out, n, m);
    } else {
        row_add_serial(a, b, out, n, m);
    }
}

void row_sub_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n, const Modulus& m) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_sub(a[i], b[i], m);
}

void row_sub_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n, const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_sub(a[i], b[i], m);
}

void row_sub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
             std::size_t n, const Modulus& m) {
    if (parallel_enabled() && n >= 4096) {
        row_sub_parallel(a, b, out, n, m);
    } else {
        row_sub_serial(a, b, out, n, m);
    }
}

void row_mul_const_serial(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                          std::size_t n, const Modulus& m) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(a[i], c, m);
}

void row_mul_const_parallel(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                            std::size_t n, const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(a[i], c, m);
}

void row_mul_const(const std::uint64_t* a, std::uint64_t c, std::uint64_t* out,
                   std::size_t n, const Modulus& m) {
    if (parallel_enabled() && n >= 2048) {
        row_mul_const_parallel(a, c, out, n, m);
    } else {
        row_mul_const_serial(a, c, out, n, m);
    }
}

void row_sub_scale_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                          std::uint64_t* out, std::size_t n, const Modulus& m) {
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(c, mod_sub(a[i], b[i], m), m);
}

void row_sub_scale_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                            std::uint64_t* out, std::size_t n, const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = mod_mul(c, mod_sub(a[i], b[i], m), m);
}

void row_sub_scale(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t c,
                   std::uint64_t* out, std::size_t n, const Modulus& m) {
    if (parallel_enabled() && n >= 2048) {
        row_sub_scale_parallel(a, b, c, out, n, m);
    } else {
        row_sub_scale_serial(a, b, c, out, n, m);
    }
}

namespace {
inline std::uint64_t fbc_acc_one(const std::uint64_t* scaled, const std::uint64_t* hat,
                                 std::size_t src_rows, std::size_t n, std::size_t t,
                                 const Modulus& m) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < src_rows; ++j) {
        acc += static_cast<unsigned __int128>(scaled[j * n + t]) * hat[j];
    }
    return barrett_reduce_128(acc, m);
}
}  // namespace

void row_fbc_acc_serial(const std::uint64_t* scaled, const std::uint64_t* hat,
                        std::size_t src_rows, std::uint64_t* out, std::size_t n,
                        const Modulus& m) {
    for (std::size_t t = 0; t < n; ++t) out[t] = fbc_acc_one(scaled, hat, src_rows, n, t, m);
}

void row_fbc_acc_parallel(const std::uint64_t* scaled, const std::uint64_t* hat,
                          std::size_t src_rows, std::uint64_t* out, std::size_t n,
                          const Modulus& m) {
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < n; ++t) out[t] = fbc_acc_one(scaled, hat, src_rows, n, t, m);
}

void row_fbc_acc(const std::uint64_t* scaled, const std::uint64_t* hat,
                 std::size_t src_rows, std::uint64_t* out, std::size_t n,
                 const Modulus& m) {
    if (parallel_enabled() && n >= 2048) {
        row_fbc_acc_parallel(scaled, hat, src_rows, out, n, m);
    } else {
        row_fbc_acc_serial(scaled, hat, src_rows, out, n, m);
    }
}

}  // namespace trimul::kernels
