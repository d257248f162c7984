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
#include "trimul/sampling.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace trimul {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    // Lemire multiply-shift with rejection of the biased low range
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            x = next();
            m = static_cast<unsigned __int128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::vector<std::int8_t> sample_ternary_fixed_weight(Rng& rng, std::size_t n,
                                                     std::size_t weight) {
    if (weight > n) throw std::invalid_argument("weight exceeds length");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::vector<std::int8_t> out(n, 0);
    for (std::size_t i = 0; i < weight; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
        std::swap(idx[i], idx[j]);
        out[idx[i]] = (rng.next() & 1) ? std::int8_t(1) : std::int8_t(-1);
    }
    return out;
}

std::vector<std::int8_t> sample_ternary_zo(Rng& rng, std::size_t n) {
    std::vector<std::int8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (rng.next() & 3) {
            case 2: out[i] = 1; break;
            case 3: out[i] = -1; break;
            default: out[i] = 0; break;
        }
    }
    return out;
}

std::vector<std::int32_t> sample_centered_binomial(Rng& rng, std::size_t n) {
    std::vector<std::int32_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t x = rng.next();
        const int a = std::popcount(x & 0xfffffull);
        const int b = std::popcount((x >> 20) & 0xfffffull);
        out[i] = a - b;
    }
    return out;
}

}  // namespace trimul
