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
#ifndef TRIMUL_SAMPLING_HPP
#define TRIMUL_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace trimul {

/// Seedable generator with hand-rolled bounded sampling so that identical
/// seeds give bit-identical draws on every platform (std distributions do
/// not guarantee that, mt19937_64 itself does).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Unbiased uniform draw from [0, bound), bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Derives an independent child seed; used for per-trial generators.
    std::uint64_t fork_seed() { return next(); }

private:
    std::mt19937_64 gen_;
};

/// Signed ternary vector with exactly `weight` nonzeros, random positions
/// and signs.
std::vector<std::int8_t> sample_ternary_fixed_weight(Rng& rng, std::size_t n,
                                                     std::size_t weight);

/// Signed ternary vector with P(0)=1/2, P(+1)=P(-1)=1/4 per entry.
std::vector<std::int8_t> sample_ternary_zo(Rng& rng, std::size_t n);

/// Centered binomial with 20 coin pairs per entry (sigma = sqrt(10), the
/// stand-in for a discrete Gaussian of sigma about 3.2).
std::vector<std::int32_t> sample_centered_binomial(Rng& rng, std::size_t n);

}  // namespace trimul

#endif
