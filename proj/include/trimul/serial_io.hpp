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
#ifndef TRIMUL_SERIAL_IO_HPP
#define TRIMUL_SERIAL_IO_HPP

#include <string>

#include "trimul/ckks.hpp"

// Self-describing on-disk formats for ciphertexts and keys. Every container
// carries {format version, kind, N, w, L, K, moduli, domain tags, level,
// scale} ahead of the residue rows. The binary form is little-endian; the
// text form is line-based with hex-float scales. Both round-trip bit-exactly.
// Writes go through a temp file and rename, so failures leave nothing behind.
namespace trimul::io {

enum class FileFormat { binary, text };

inline constexpr std::uint32_t kFormatVersion = 1;

void save_ciphertext(const std::string& path, const Params& ctx, const Ciphertext& ct,
                     FileFormat fmt = FileFormat::binary);
Ciphertext load_ciphertext(const std::string& path, const Params& ctx);

void save_secret_key(const std::string& path, const Params& ctx, const SecretKey& sk,
                     FileFormat fmt = FileFormat::binary);
SecretKey load_secret_key(const std::string& path, const Params& ctx);

void save_public_key(const std::string& path, const Params& ctx, const PublicKey& pk,
                     FileFormat fmt = FileFormat::binary);
PublicKey load_public_key(const std::string& path, const Params& ctx);

void save_eval_key(const std::string& path, const Params& ctx, const EvalKey& evk,
                   FileFormat fmt = FileFormat::binary);
EvalKey load_eval_key(const std::string& path, const Params& ctx);

}  // namespace trimul::io

#endif
