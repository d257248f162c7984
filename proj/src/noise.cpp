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
#include "trimul/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace trimul {

const char* to_string(MulPath path) {
    return path == MulPath::three_input ? "three_input" : "chained_two_input";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed_for(std::uint64_t master, std::size_t trial) {
    return splitmix64(master ^ (0x51ed270b0a1cull + trial));
}

double uniform_signed(Rng& rng, double bound) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1p-53;  // [0,1)
    return (2.0 * u - 1.0) * bound;
}

struct TrialInputs {
    Message m1, m2, m3;
    Ciphertext ct1, ct2, ct3;
    std::vector<BigInt> target;  // round(m1*m2*m3 / (q_{L-1} q_{L-2}))
};

TrialInputs make_trial(const Params& ctx, const KeySet& keys, std::uint64_t seed,
                       double msg_bound) {
    Rng rng(seed);
    const std::size_t n = ctx.n();
    std::vector<double> z1(n), z2(n), z3(n);
    for (std::size_t i = 0; i < n; ++i) z1[i] = uniform_signed(rng, msg_bound);
    for (std::size_t i = 0; i < n; ++i) z2[i] = uniform_signed(rng, msg_bound);
    for (std::size_t i = 0; i < n; ++i) z3[i] = uniform_signed(rng, msg_bound);

    TrialInputs t;
    t.m1 = encode(ctx, z1, ctx.scale());
    t.m2 = encode(ctx, z2, ctx.scale());
    t.m3 = encode(ctx, z3, ctx.scale());
    t.ct1 = encrypt(ctx, keys.pk, t.m1, rng);
    t.ct2 = encrypt(ctx, keys.pk, t.m2, rng);
    t.ct3 = encrypt(ctx, keys.pk, t.m3, rng);

    const std::size_t l = ctx.q_limbs();
    BigInt divisor = BigInt(ctx.q_basis()[l - 1].value) * ctx.q_basis()[l - 2].value;
    std::vector<BigInt> prod = oracle::negacyclic_product3(t.m1.coeffs, t.m2.coeffs, t.m3.coeffs);
    t.target.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.target[i] = oracle::round_div(prod[i], divisor);
    return t;
}

double to_double(const BigInt& v) { return static_cast<double>(v); }

}  // namespace

std::vector<NoiseRecord> measure_noise(const Params& ctx, const KeySet& keys, MulPath path,
                                       const NoiseLabConfig& cfg) {
    if (ctx.q_limbs() < 3) throw std::invalid_argument("noise lab needs L >= 3");
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (cfg.msg_bound <= 0.0) throw std::invalid_argument("message bound must be positive");

    std::vector<NoiseRecord> records(cfg.trials);
    const std::size_t l = ctx.q_limbs();
    const BigInt q_top = ctx.q_product(l);
    const BigInt q_final = ctx.q_product(l - 2);
#pragma omp parallel for schedule(dynamic) if (cfg.trials > 1)
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = trial_seed_for(cfg.seed, trial);
        TrialInputs in = make_trial(ctx, keys, seed, cfg.msg_bound);
        NoiseRecord rec;
        rec.trial_seed = seed;
        rec.path = path;

        Ciphertext out;
        if (path == MulPath::three_input) {
            Tensor3 t = tensor3(ctx, in.ct1, in.ct2, in.ct3);
            Ciphertext relin = relinearize3(ctx, t, keys.evk2, keys.evk3);
            out = ct_rescale(ctx, ct_rescale(ctx, relin));
            if (cfg.per_stage) {
                const RnsPoly comps[4] = {t.d0, t.d1, t.d2, t.d3};
                std::vector<BigInt> te = oracle::tensor_eval(ctx, comps, keys.sk);
                std::vector<BigInt> prod =
                    oracle::negacyclic_product3(in.m1.coeffs, in.m2.coeffs, in.m3.coeffs);
                rec.tensor_residual =
                    to_double(oracle::max_centered_diff(te, prod, q_top));
                std::vector<BigInt> rd = decrypt_exact(ctx, keys.sk, relin);
                rec.relin_residual =
                    to_double(oracle::max_centered_diff(rd, te, q_top));
                BigInt dropped = BigInt(ctx.q_basis()[l - 1].value) * ctx.q_basis()[l - 2].value;
                std::vector<BigInt> expect(rd.size());
                for (std::size_t i = 0; i < rd.size(); ++i) {
                    expect[i] = oracle::round_div(rd[i], dropped);
                }
                std::vector<BigInt> fd = decrypt_exact(ctx, keys.sk, out);
                rec.rescale_residual =
                    to_double(oracle::max_centered_diff(fd, expect, q_final));
            }
        } else {
            Ciphertext ct12 = multiply2(ctx, in.ct1, in.ct2, keys.evk2);
            Ciphertext ct3_aligned = ct_drop_limb(ctx, in.ct3);
            Tensor2 t2 = tensor2(ctx, ct12, ct3_aligned);
            Ciphertext relin2 = relinearize2(ctx, t2, keys.evk2);
            out = ct_rescale(ctx, relin2);
            if (cfg.per_stage) {
                Tensor2 t12 = tensor2(ctx, in.ct1, in.ct2);
                const RnsPoly comps[3] = {t12.d0, t12.d1, t12.d2};
                std::vector<BigInt> te = oracle::tensor_eval(ctx, comps, keys.sk);
                std::vector<BigInt> prod12 =
                    oracle::negacyclic_convolve(in.m1.coeffs, in.m2.coeffs);
                rec.tensor_residual =
                    to_double(oracle::max_centered_diff(te, prod12, q_top));
                std::vector<BigInt> rd12 =
                    decrypt_exact(ctx, keys.sk, relinearize2(ctx, t12, keys.evk2));
                rec.relin_residual =
                    to_double(oracle::max_centered_diff(rd12, te, q_top));
                std::vector<BigInt> rd2 = decrypt_exact(ctx, keys.sk, relin2);
                std::vector<BigInt> expect(rd2.size());
                for (std::size_t i = 0; i < rd2.size(); ++i) {
                    expect[i] = oracle::round_div(rd2[i], BigInt(ctx.q_basis()[l - 2].value));
                }
                std::vector<BigInt> fd = decrypt_exact(ctx, keys.sk, out);
                rec.rescale_residual =
                    to_double(oracle::max_centered_diff(fd, expect, q_final));
            }
        }
        std::vector<BigInt> dec = decrypt_exact(ctx, keys.sk, out);
        rec.max_abs_error = to_double(oracle::max_centered_diff(dec, in.target, q_final));
        records[trial] = rec;
    }
    return records;
}

NoiseComponents estimate_components(const Params& ctx, const KeySet& keys,
                                    std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const std::size_t l = ctx.q_limbs();
    const BigInt q_top = ctx.q_product(l);
    NoiseComponents comps;
    comps.relin_min = std::numeric_limits<double>::infinity();

    Message zero;
    zero.scale = ctx.scale();
    zero.coeffs.assign(ctx.n(), 0);

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(trial_seed_for(seed ^ 0xc0117ull, t));
        Ciphertext ct = encrypt(ctx, keys.pk, zero, rng);

        // fresh noise: decryption of a zero message is pure error
        std::vector<BigInt> dec = decrypt_exact(ctx, keys.sk, ct);
        BigInt worst = 0;
        for (const BigInt& v : dec) {
            BigInt a = v < 0 ? BigInt(-v) : v;
            worst = std::max(worst, a);
        }
        comps.fresh_b = std::max(comps.fresh_b, to_double(worst));

        // relinearization-only residual on a fresh tensor
        Ciphertext ct_b = encrypt(ctx, keys.pk, zero, rng);
        Tensor2 tens = tensor2(ctx, ct, ct_b);
        const RnsPoly tcomps[3] = {tens.d0, tens.d1, tens.d2};
        std::vector<BigInt> te = oracle::tensor_eval(ctx, tcomps, keys.sk);
        std::vector<BigInt> rd = decrypt_exact(ctx, keys.sk, relinearize2(ctx, tens, keys.evk2));
        const double relin = to_double(oracle::max_centered_diff(rd, te, q_top));
        comps.relin_b = std::max(comps.relin_b, relin);
        comps.relin_min = std::min(comps.relin_min, relin);
        comps.relin_max = std::max(comps.relin_max, relin);

        // rescale rounding residual on a fresh ciphertext
        std::vector<BigInt> before = decrypt_exact(ctx, keys.sk, ct);
        Ciphertext scaled = ct_rescale(ctx, ct);
        std::vector<BigInt> after = decrypt_exact(ctx, keys.sk, scaled);
        const BigInt q_last(ctx.q_basis()[l - 1].value);
        std::vector<BigInt> expect(before.size());
        for (std::size_t i = 0; i < before.size(); ++i) {
            expect[i] = oracle::round_div(before[i], q_last);
        }
        comps.round_b = std::max(
            comps.round_b,
            to_double(oracle::max_centered_diff(after, expect, ctx.q_product(l - 1))));
    }
    return comps;
}

double noise_bound_three_input(const Params& ctx, double msg_bound,
                               const NoiseComponents& comps) {
    const long double n = static_cast<long double>(ctx.n());
    const long double v = static_cast<long double>(msg_bound) * ctx.scale() + 1.0L;
    const long double b = comps.fresh_b;
    const std::size_t l = ctx.q_limbs();
    const long double q_drop = static_cast<long double>(ctx.q_basis()[l - 1].value) *
                               static_cast<long double>(ctx.q_basis()[l - 2].value);
    // every triple product of polynomials picks up the ring-expansion factor n^2
    const long double tensor_terms = n * n * (3.0L * v * v * b + 3.0L * v * b * b + b * b * b);
    return static_cast<double>(
        (tensor_terms + 2.0L * comps.relin_b + comps.round_b) / q_drop);
}

double noise_bound_chained(const Params& ctx, double msg_bound,
                           const NoiseComponents& comps) {
    const long double n = static_cast<long double>(ctx.n());
    const long double v = static_cast<long double>(msg_bound) * ctx.scale() + 1.0L;
    const long double b = comps.fresh_b;
    const std::size_t l = ctx.q_limbs();
    const long double q1 = static_cast<long double>(ctx.q_basis()[l - 1].value);
    const long double q2 = static_cast<long double>(ctx.q_basis()[l - 2].value);
    const long double br = comps.relin_b;
    const long double bo = comps.round_b;
    const long double triple = n * n * (3.0L * v * v * b + 3.0L * v * b * b + b * b * b);
    const long double cross = n * (v * (br + bo) + b * (br + bo));
    return static_cast<double>((triple + cross) / (q1 * q2) + (br + bo) / q2);
}

CompareSummary compare_paths(const Params& ctx, const KeySet& keys,
                             const NoiseLabConfig& cfg) {
    CompareSummary s;
    s.msg_bound = cfg.msg_bound;
    s.trials = cfg.trials;
    s.seed = cfg.seed;

    NoiseLabConfig per_path = cfg;
    per_path.per_stage = cfg.per_stage;
    s.three = measure_noise(ctx, keys, MulPath::three_input, per_path);
    s.chained = measure_noise(ctx, keys, MulPath::chained_two_input, per_path);

    auto aggregate = [](const std::vector<NoiseRecord>& recs) {
        PathAggregate a;
        for (const NoiseRecord& r : recs) {
            a.mean_error += r.max_abs_error;
            a.max_error = std::max(a.max_error, r.max_abs_error);
        }
        a.mean_error /= static_cast<double>(recs.size());
        return a;
    };
    s.agg_three = aggregate(s.three);
    s.agg_chained = aggregate(s.chained);
    s.mean_ratio = s.agg_three.mean_error / s.agg_chained.mean_error;
    s.max_ratio = s.agg_three.max_error / s.agg_chained.max_error;
    if (cfg.trials > 1) {
        s.ordering_holds = s.agg_three.mean_error <= cfg.margin * s.agg_chained.mean_error &&
                           s.agg_three.max_error <= cfg.margin * s.agg_chained.max_error;
    } else {
        s.ordering_holds = true;  // a single record carries no aggregate claim
    }

    s.components = estimate_components(ctx, keys, std::min<std::size_t>(cfg.trials, 25),
                                       cfg.seed);
    s.bound_rhs = noise_bound_three_input(ctx, cfg.msg_bound, s.components);
    s.chained_bound_rhs = noise_bound_chained(ctx, cfg.msg_bound, s.components);
    for (const NoiseRecord& r : s.three) {
        if (r.max_abs_error > s.bound_rhs) ++s.bound_violations;
    }
    return s;
}

std::string format_table(const CompareSummary& s) {
    std::ostringstream os;
    char buf[256];
    os << "noise comparison: three_input vs chained_two_input\n";
    std::snprintf(buf, sizeof buf, "trials=%zu seed=%llu msg_bound=%.8g\n", s.trials,
                  static_cast<unsigned long long>(s.seed), s.msg_bound);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "components: B=%.6g B_relin=%.6g (spread %.6g..%.6g) B_round=%.6g\n",
                  s.components.fresh_b, s.components.relin_b, s.components.relin_min,
                  s.components.relin_max, s.components.round_b);
    os << buf;
    std::snprintf(buf, sizeof buf, "bound_rhs(three)=%.6g bound_rhs(chained)=%.6g\n",
                  s.bound_rhs, s.chained_bound_rhs);
    os << buf;
    os << " trial  three_input  chained_2x\n";
    for (std::size_t i = 0; i < s.three.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%6zu  %11.1f  %10.1f\n", i,
                      s.three[i].max_abs_error, s.chained[i].max_abs_error);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "mean    %11.3f  %10.3f   ratio=%.4f\n",
                  s.agg_three.mean_error, s.agg_chained.mean_error, s.mean_ratio);
    os << buf;
    std::snprintf(buf, sizeof buf, "max     %11.1f  %10.1f   ratio=%.4f\n",
                  s.agg_three.max_error, s.agg_chained.max_error, s.max_ratio);
    os << buf;
    os << "ordering(three <= chained): " << (s.ordering_holds ? "PASS" : "FAIL") << "\n";
    os << "per-trial bound check: "
       << (s.bound_violations == 0 ? "PASS" : "FAIL") << " (" << s.bound_violations
       << " violations)\n";
    return os.str();
}

void write_records_jsonl(std::ostream& os, const CompareSummary& s) {
    using nlohmann::json;
    auto emit = [&](const std::vector<NoiseRecord>& recs) {
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const NoiseRecord& r = recs[i];
            json j;
            j["trial"] = i;
            j["trial_seed"] = r.trial_seed;
            j["path"] = to_string(r.path);
            j["max_abs_error"] = r.max_abs_error;
            j["tensor_residual"] = r.tensor_residual;
            j["relin_residual"] = r.relin_residual;
            j["rescale_residual"] = r.rescale_residual;
            os << j.dump() << "\n";
        }
    };
    emit(s.three);
    emit(s.chained);
    json tail;
    tail["summary"] = {{"trials", s.trials},
                       {"seed", s.seed},
                       {"msg_bound", s.msg_bound},
                       {"mean_three", s.agg_three.mean_error},
                       {"mean_chained", s.agg_chained.mean_error},
                       {"max_three", s.agg_three.max_error},
                       {"max_chained", s.agg_chained.max_error},
                       {"mean_ratio", s.mean_ratio},
                       {"max_ratio", s.max_ratio},
                       {"ordering_holds", s.ordering_holds},
                       {"bound_rhs_three", s.bound_rhs},
                       {"bound_violations", s.bound_violations}};
    os << tail.dump() << "\n";
}

}  // namespace trimul
