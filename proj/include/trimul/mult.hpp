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
#ifndef TRIMUL_MULT_HPP
#define TRIMUL_MULT_HPP

#include "trimul/ckks.hpp"

namespace trimul {

/// Per-call instrumentation; never accumulated globally.
struct OpCounters {
    std::size_t tensor_products = 0;  // pointwise polynomial products while tensoring
    std::size_t evk_products = 0;     // pointwise products against evaluation keys
    std::size_t mod_up_calls = 0;
    std::size_t mod_down_calls = 0;
    std::size_t ntt_calls = 0;   // whole-polynomial forward transforms
    std::size_t intt_calls = 0;  // whole-polynomial inverse transforms
};

/// d0 + d1*s + d2*s^2 decrypts to the product of the two input decryptions.
struct Tensor2 {
    RnsPoly d0, d1, d2;  // NTT domain, level active limbs
    std::size_t level = 0;
    double scale = 0.0;
};

/// d0 + d1*s + d2*s^2 + d3*s^3 decrypts to the three-way product. The f/g
/// intermediates of the two Karatsuba stages are kept for inspection.
struct Tensor3 {
    RnsPoly d0, d1, d2, d3;
    RnsPoly f0, f1, f2, g1, g2;
    std::size_t level = 0;
    double scale = 0.0;
};

/// Four pointwise products: d0=a0*b0, d1=a0*b1+a1*b0, d2=a1*b1.
Tensor2 tensor2(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                OpCounters* ops = nullptr);

/// Same contract with three products, d1 = (a0+a1)(b0+b1) - d0 - d2.
Tensor2 tensor2_karatsuba(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                          OpCounters* ops = nullptr);

/// Two-stage Karatsuba tensoring of three ciphertexts; exactly 8 pointwise
/// polynomial products.
Tensor3 tensor3(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                const Ciphertext& c, OpCounters* ops = nullptr);

/// Direct 16-product expansion of the same tensor; reference path for the
/// equivalence tests.
Tensor3 tensor3_direct(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                       const Ciphertext& c, OpCounters* ops = nullptr);

/// Folds d2*s^2 back into two polynomials with evk; output is un-rescaled at
/// the tensor's level, coefficient domain.
Ciphertext relinearize2(const Params& ctx, const Tensor2& t, const EvalKey& evk2,
                        OpCounters* ops = nullptr);

/// Folds d2*s^2 and d3*s^3 with the merged dataflow: three evk products
/// (the shared-k1 branch multiplies u2+u3 once) and a single ModDown per
/// output polynomial. Requires evk2 and evk3 to share k1.
Ciphertext relinearize3(const Params& ctx, const Tensor3& t, const EvalKey& evk2,
                        const EvalKey& evk3, OpCounters* ops = nullptr);

/// Reference dataflow with four evk products and four ModDowns; differs from
/// the merged path by at most 2K per output coefficient.
Ciphertext relinearize3_unmerged(const Params& ctx, const Tensor3& t, const EvalKey& evk2,
                                 const EvalKey& evk3, OpCounters* ops = nullptr);

/// tensor2 -> relinearize2 -> rescale; level drops by one.
Ciphertext multiply2(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                     const EvalKey& evk2, OpCounters* ops = nullptr,
                     bool karatsuba = false);

/// tensor3 -> relinearize3 -> two rescalings; level drops by two.
Ciphertext multiply3(const Params& ctx, const Ciphertext& a, const Ciphertext& b,
                     const Ciphertext& c, const EvalKey& evk2, const EvalKey& evk3,
                     OpCounters* ops = nullptr);

}  // namespace trimul

#endif
