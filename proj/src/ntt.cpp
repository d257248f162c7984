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
#include "trimul/ntt.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace trimul {

namespace {
std::uint32_t bit_reverse(std::uint32_t v, int bits) {
    std::uint32_t r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}
}  // namespace

NttTable::NttTable(std::uint64_t ring_degree, const Modulus& m) : modulus_(m) {
    if (!std::has_single_bit(ring_degree) || ring_degree < 2) {
        throw std::invalid_argument("ring degree must be a power of two >= 2");
    }
    if (m.two_n_root == 0) {
        throw std::invalid_argument("modulus carries no 2N-th root");
    }
    n_ = ring_degree;
    log_n_ = std::countr_zero(n_);

    const std::uint64_t psi = m.two_n_root;
    const std::uint64_t psi_inv = mod_inv(psi, m);
    root_powers_.resize(n_);
    inv_root_powers_.resize(n_);
    std::uint64_t fwd = 1, inv = 1;
    std::vector<std::uint64_t> fwd_pow(n_), inv_pow(n_);
    for (std::uint64_t i = 0; i < n_; ++i) {
        fwd_pow[i] = fwd;
        inv_pow[i] = inv;
        fwd = mod_mul(fwd, psi, m);
        inv = mod_mul(inv, psi_inv, m);
    }
    for (std::uint64_t i = 0; i < n_; ++i) {
        std::uint64_t r = bit_reverse(static_cast<std::uint32_t>(i), log_n_);
        root_powers_[i] = fwd_pow[r];
        inv_root_powers_[i] = inv_pow[r];
    }
    n_inv_ = mod_inv(n_ % m.value, m);
}

void NttTable::forward(std::uint64_t* a) const {
    const Modulus& m = modulus_;
    std::uint64_t t = n_ >> 1;
    for (std::uint64_t stage = 1; stage < n_; stage <<= 1) {
        for (std::uint64_t i = 0; i < stage; ++i) {
            const std::uint64_t w = root_powers_[stage + i];
            std::uint64_t* x = a + 2 * i * t;
            std::uint64_t* y = x + t;
            for (std::uint64_t j = 0; j < t; ++j) {
                const std::uint64_t u = x[j];
                const std::uint64_t v = mod_mul(y[j], w, m);
                x[j] = mod_add(u, v, m);
                y[j] = mod_sub(u, v, m);
            }
        }
        t >>= 1;
    }
}

void NttTable::inverse(std::uint64_t* a) const {
    const Modulus& m = modulus_;
    std::uint64_t t = 1;
    for (std::uint64_t stage = n_ >> 1; stage >= 1; stage >>= 1) {
        for (std::uint64_t i = 0; i < stage; ++i) {
            const std::uint64_t w = inv_root_powers_[stage + i];
            std::uint64_t* x = a + 2 * i * t;
            std::uint64_t* y = x + t;
            for (std::uint64_t j = 0; j < t; ++j) {
                const std::uint64_t u = x[j];
                const std::uint64_t v = y[j];
                x[j] = mod_add(u, v, m);
                y[j] = mod_mul(mod_sub(u, v, m), w, m);
            }
        }
        t <<= 1;
    }
    for (std::uint64_t j = 0; j < n_; ++j) a[j] = mod_mul(a[j], n_inv_, m);
}

void negacyclic_mul_schoolbook(const std::uint64_t* a, const std::uint64_t* b,
                               std::uint64_t* out, std::size_t n, const Modulus& m) {
    for (std::size_t k = 0; k < n; ++k) {
        unsigned __int128 pos = 0;
        unsigned __int128 neg = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            pos += static_cast<unsigned __int128>(a[i]) * b[k - i];
            if (pos >> 126) pos = barrett_reduce_128(pos, m);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            neg += static_cast<unsigned __int128>(a[i]) * b[n + k - i];
            if (neg >> 126) neg = barrett_reduce_128(neg, m);
        }
        out[k] = mod_sub(barrett_reduce_128(pos, m), barrett_reduce_128(neg, m), m);
    }
}

}  // namespace trimul
