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
#ifndef TRIMUL_CKKS_HPP
#define TRIMUL_CKKS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "trimul/keys.hpp"
#include "trimul/params.hpp"
#include "trimul/sampling.hpp"

namespace trimul {

/// A scaled integer message polynomial: coeffs[i] = round(scale * z_i).
struct Message {
    std::vector<std::int64_t> coeffs;
    double scale = 0.0;
};

struct Ciphertext {
    RnsPoly c0;
    RnsPoly c1;
    std::size_t level = 0;  // active q limbs
    double scale = 0.0;
};

/// Coefficient encoding. Throws when |z_i| * scale reaches the single-limb
/// headroom 2^(w-2).
Message encode(const Params& ctx, std::span<const double> z, double scale);
std::vector<double> decode(const Message& msg);

RnsPoly message_to_poly(const Params& ctx, const Message& msg, std::size_t q_rows);

Ciphertext encrypt(const Params& ctx, const PublicKey& pk, const Message& msg, Rng& rng);

/// The noiseless ciphertext (m, 0) at top level; decrypts exactly to m.
Ciphertext trivial_encrypt(const Params& ctx, const Message& msg);

/// Centered reconstruction of c0 + c1*s over the active modulus, one big
/// integer per coefficient.
std::vector<BigInt> decrypt_exact(const Params& ctx, const SecretKey& sk,
                                  const Ciphertext& ct);

/// Same, narrowed to int64 message units and carrying ct.scale. Throws if a
/// coefficient does not fit.
Message decrypt(const Params& ctx, const SecretKey& sk, const Ciphertext& ct);

Ciphertext ct_add(const Params& ctx, const Ciphertext& a, const Ciphertext& b);
Ciphertext ct_sub(const Params& ctx, const Ciphertext& a, const Ciphertext& b);

/// Modulus reduction without division: drops the last limb, keeps the scale.
Ciphertext ct_drop_limb(const Params& ctx, const Ciphertext& ct);

/// Rescaling: drops the last limb dividing by it; scale shrinks accordingly.
Ciphertext ct_rescale(const Params& ctx, const Ciphertext& ct);

}  // namespace trimul

#endif
