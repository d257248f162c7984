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
#include "trimul/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "trimul/kernels.hpp"

namespace trimul::oracle {

namespace {

using I128 = __int128;

std::uint64_t max_abs(std::span<const std::int64_t> v) {
    std::uint64_t m = 0;
    for (std::int64_t x : v) {
        const std::uint64_t a = x < 0 ? static_cast<std::uint64_t>(-x)
                                      : static_cast<std::uint64_t>(x);
        m = std::max(m, a);
    }
    return m;
}

// out[k] = sum_{i+j=k} a_i b_j - sum_{i+j=k+n} a_i b_j, accumulated in I128;
// the caller guarantees no overflow.
std::vector<I128> convolve_i128(std::span<const std::int64_t> a,
                                std::span<const I128> b) {
    const std::size_t n = a.size();
    std::vector<I128> out(n);
    const bool par = kernels::parallel_enabled() && n >= 64;
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t k = 0; k < n; ++k) {
        I128 acc = 0;
        for (std::size_t i = 0; i <= k; ++i) acc += static_cast<I128>(a[i]) * b[k - i];
        for (std::size_t i = k + 1; i < n; ++i) acc -= static_cast<I128>(a[i]) * b[n + k - i];
        out[k] = acc;
    }
    return out;
}

std::vector<BigInt> convolve_big(std::span<const std::int64_t> a,
                                 std::span<const BigInt> b) {
    const std::size_t n = a.size();
    std::vector<BigInt> out(n);
    const bool par = kernels::parallel_enabled() && n >= 64;
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t k = 0; k < n; ++k) {
        BigInt acc = 0;
        for (std::size_t i = 0; i <= k; ++i) acc += BigInt(a[i]) * b[k - i];
        for (std::size_t i = k + 1; i < n; ++i) acc -= BigInt(a[i]) * b[n + k - i];
        out[k] = acc;
    }
    return out;
}

std::vector<BigInt> to_big(std::span<const I128> v) {
    std::vector<BigInt> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const I128 x = v[i];
        const bool neg = x < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x)
                                  : static_cast<unsigned __int128>(x);
        BigInt b = static_cast<std::uint64_t>(u >> 64);
        b <<= 64;
        b += static_cast<std::uint64_t>(u);
        out[i] = neg ? -b : b;
    }
    return out;
}

std::vector<I128> widen_i128(std::span<const std::int64_t> v) {
    return std::vector<I128>(v.begin(), v.end());
}

}  // namespace

std::vector<BigInt> negacyclic_convolve(std::span<const std::int64_t> a,
                                        std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    const std::size_t n = a.size();
    // |out| <= n * max|a| * max|b|; stays far below 2^126 for word-size inputs
    const long double bound = static_cast<long double>(n) *
                              static_cast<long double>(max_abs(a)) *
                              static_cast<long double>(max_abs(b));
    if (bound < 1e37L) {
        return to_big(convolve_i128(a, widen_i128(b)));
    }
    std::vector<BigInt> bb(b.begin(), b.end());
    return convolve_big(a, bb);
}

std::vector<BigInt> negacyclic_product3(std::span<const std::int64_t> a,
                                        std::span<const std::int64_t> b,
                                        std::span<const std::int64_t> c) {
    if (a.size() != b.size() || b.size() != c.size()) {
        throw std::invalid_argument("length mismatch");
    }
    const std::size_t n = a.size();
    const long double n_ld = static_cast<long double>(n);
    const long double bound = n_ld * n_ld * static_cast<long double>(max_abs(a)) *
                              static_cast<long double>(max_abs(b)) *
                              static_cast<long double>(max_abs(c));
    if (bound < 1e37L) {  // well inside the int128 range
        std::vector<I128> ab = convolve_i128(b, widen_i128(a));
        return to_big(convolve_i128(c, ab));
    }
    std::vector<BigInt> ab = negacyclic_convolve(a, b);
    return convolve_big(c, ab);
}

std::vector<BigInt> convolve_ternary(std::span<const BigInt> a,
                                     std::span<const std::int8_t> ternary) {
    const std::size_t n = a.size();
    if (ternary.size() != n) throw std::invalid_argument("length mismatch");
    std::vector<BigInt> out(n, BigInt(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (ternary[j] == 0) continue;
        const bool plus = ternary[j] > 0;
        // x^j * a(x) wraps with sign flip past degree n-1
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = i + j;
            if (k < n) {
                if (plus) out[k] += a[i]; else out[k] -= a[i];
            } else {
                if (plus) out[k - n] -= a[i]; else out[k - n] += a[i];
            }
        }
    }
    return out;
}

BigInt round_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("division by zero");
    BigInt d = den < 0 ? BigInt(-den) : den;
    BigInt x = den < 0 ? BigInt(-num) : num;
    BigInt q = x / d;  // truncated toward zero
    BigInt r = x - q * d;
    if (2 * r >= d) q += 1;
    if (2 * r <= -d) q -= 1;
    return q;
}

BigInt center_mod(BigInt v, const BigInt& q) {
    v %= q;
    if (v < 0) v += q;
    if (2 * v >= q) v -= q;
    return v;
}

std::vector<BigInt> reconstruct_poly(const Params& ctx, const RnsPoly& poly) {
    RnsPoly coeff = to_coefficient(ctx, poly);
    std::vector<Modulus> moduli;
    for (std::size_t j = 0; j < coeff.rows(); ++j) moduli.push_back(ctx.row_modulus(coeff, j));
    CrtContext crt(moduli);
    std::vector<BigInt> out(coeff.n());
    std::vector<std::uint64_t> residues(coeff.rows());
    for (std::size_t i = 0; i < coeff.n(); ++i) {
        for (std::size_t j = 0; j < coeff.rows(); ++j) residues[j] = coeff.row(j)[i];
        out[i] = crt.reconstruct_centered(residues);
    }
    return out;
}

std::vector<BigInt> tensor_eval(const Params& ctx, std::span<const RnsPoly> components,
                                const SecretKey& sk) {
    if (components.empty()) throw std::invalid_argument("no tensor components");
    const BigInt q = ctx.q_product(components[0].q_rows());
    // Horner over the secret: acc = d_last; acc = acc*s + d_i
    std::vector<BigInt> acc = reconstruct_poly(ctx, components.back());
    for (std::size_t i = components.size() - 1; i-- > 0;) {
        acc = convolve_ternary(acc, sk.coeffs);
        std::vector<BigInt> d = reconstruct_poly(ctx, components[i]);
        for (std::size_t t = 0; t < acc.size(); ++t) {
            acc[t] = center_mod(acc[t] + d[t], q);
        }
    }
    return acc;
}

BigInt max_centered_diff(std::span<const BigInt> a, std::span<const BigInt> b,
                         const BigInt& q) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    BigInt worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        BigInt d = center_mod(a[i] - b[i], q);
        if (d < 0) d = -d;
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace trimul::oracle
