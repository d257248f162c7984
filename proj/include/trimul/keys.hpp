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
#ifndef TRIMUL_KEYS_HPP
#define TRIMUL_KEYS_HPP

#include <cstdint>
#include <vector>

#include "trimul/params.hpp"
#include "trimul/sampling.hpp"

namespace trimul {

struct SecretKey {
    std::vector<std::int8_t> coeffs;  // ternary, exactly h nonzeros
    RnsPoly s_ntt;                    // embedded over all L+K rows, NTT domain
};

struct PublicKey {
    RnsPoly b;  // -a*s + e over the L q rows, NTT domain
    RnsPoly a;
};

/// Relinearization key for one secret power: k0 + s*k1 = e + P*s^power
/// over the extended modulus. Keys of the same set share k1.
struct EvalKey {
    RnsPoly k0;
    RnsPoly k1;
    int power = 2;
};

struct KeySet {
    SecretKey sk;
    PublicKey pk;
    EvalKey evk2;  // relinearizes s^2
    EvalKey evk3;  // relinearizes s^3, same k1 as evk2
};

/// Deterministic for a fixed seed. evk2 and evk3 share the k1 component but
/// carry independently drawn error vectors.
KeySet keygen(const Params& ctx, std::uint64_t seed);

/// Embeds small signed coefficients into residue rows.
RnsPoly embed_signed(const Params& ctx, const std::vector<std::int64_t>& coeffs,
                     std::size_t q_rows, std::size_t p_rows);

}  // namespace trimul

#endif
