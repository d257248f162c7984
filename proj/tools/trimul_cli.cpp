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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "trimul/hwmodel.hpp"
#include "trimul/kernels.hpp"
#include "trimul/noise.hpp"
#include "trimul/oracle.hpp"
#include "trimul/serial_io.hpp"

namespace fs = std::filesystem;
using namespace trimul;

namespace {

struct ParamFlags {
    std::string preset = "paper30";
    std::optional<std::uint64_t> n;
    std::optional<std::size_t> q_limbs;
    std::optional<std::size_t> p_limbs;
    std::optional<int> word_bits;
    std::optional<double> scale;
    std::optional<std::size_t> hamming_weight;
    std::optional<double> sigma;
};

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
    cmd->add_option("--params-preset", pf.preset, "parameter preset (toy8 or paper30)")
        ->check(CLI::IsMember({"toy8", "paper30"}))
        ->capture_default_str();
    cmd->add_option("--n", pf.n, "ring degree override (power of two)");
    cmd->add_option("--q-limbs", pf.q_limbs, "main-modulus limb count L");
    cmd->add_option("--p-limbs", pf.p_limbs, "auxiliary-modulus limb count K");
    cmd->add_option("--word-bits", pf.word_bits, "residue width w");
    cmd->add_option("--scale", pf.scale, "message scale");
    cmd->add_option("--hamming-weight", pf.hamming_weight, "secret-key weight h");
    cmd->add_option("--sigma", pf.sigma, "error sigma");
}

Params make_params(const ParamFlags& pf) {
    ParamsConfig cfg =
        pf.preset == "toy8" ? Params::toy8().config() : Params::paper30().config();
    if (pf.n) cfg.n = *pf.n;
    if (pf.q_limbs) cfg.q_limbs = *pf.q_limbs;
    if (pf.p_limbs) cfg.p_limbs = *pf.p_limbs;
    if (pf.word_bits) {
        cfg.word_bits = *pf.word_bits;
        if (!pf.scale) cfg.scale = 0.0;  // rederive from the new width
    }
    if (pf.scale) cfg.scale = *pf.scale;
    if (pf.hamming_weight) cfg.hamming_weight = *pf.hamming_weight;
    if (pf.sigma) cfg.noise_sigma = *pf.sigma;
    return Params::create(cfg);
}

io::FileFormat parse_format(const std::string& s) {
    return s == "text" ? io::FileFormat::text : io::FileFormat::binary;
}

std::vector<double> read_reals(const std::string& path, std::size_t max_len) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open message file " + path);
    std::vector<double> z;
    double v;
    while (is >> v) z.push_back(v);
    if (z.size() > max_len) {
        throw std::runtime_error("message file holds more than N values");
    }
    return z;
}

double max_residual(const Params& ctx, const RnsPoly& poly) {
    std::vector<BigInt> rec = oracle::reconstruct_poly(ctx, poly);
    BigInt worst = 0;
    for (const BigInt& v : rec) {
        BigInt a = v < 0 ? BigInt(-v) : v;
        if (a > worst) worst = a;
    }
    return static_cast<double>(worst);
}

// k0 + s*k1 - P*s^power, reconstructed over the full extended basis
double eval_key_residual(const Params& ctx, const KeySet& ks, const EvalKey& evk) {
    RnsPoly acc = poly_add(ctx, evk.k0, negacyclic_mul(ctx, ks.sk.s_ntt, evk.k1));
    RnsPoly s_pow = negacyclic_mul(ctx, ks.sk.s_ntt, ks.sk.s_ntt);
    if (evk.power == 3) s_pow = negacyclic_mul(ctx, s_pow, ks.sk.s_ntt);
    RnsPoly scaled(s_pow.n(), s_pow.q_rows(), s_pow.p_rows(), s_pow.domain());
    for (std::size_t j = 0; j < s_pow.q_rows(); ++j) {
        kernels::row_mul_const(s_pow.row(j), ctx.p_mod_q(j), scaled.row(j), s_pow.n(),
                               ctx.q_basis()[j]);
    }
    acc = poly_sub(ctx, acc, scaled);
    return max_residual(ctx, acc);
}

int cmd_keygen(const ParamFlags& pf, std::uint64_t seed, const std::string& out_dir,
               const std::string& format, int max_inputs) {
    Params ctx = make_params(pf);
    if (max_inputs == 3 && ctx.q_limbs() < 3) {
        std::cerr << "error: 3-input multiplication needs at least 3 limbs (got L="
                  << ctx.q_limbs() << "); rerun with --max-inputs 2 or more limbs\n";
        return 2;
    }
    if (max_inputs == 2 && ctx.q_limbs() < 2) {
        std::cerr << "error: multiplication needs at least 2 limbs\n";
        return 2;
    }
    KeySet ks = keygen(ctx, seed);
    fs::create_directories(out_dir);
    const io::FileFormat fmt = parse_format(format);
    io::save_secret_key(out_dir + "/sk.key", ctx, ks.sk, fmt);
    io::save_public_key(out_dir + "/pk.key", ctx, ks.pk, fmt);
    io::save_eval_key(out_dir + "/evk2.key", ctx, ks.evk2, fmt);
    io::save_eval_key(out_dir + "/evk3.key", ctx, ks.evk3, fmt);

    const double bound = 6.0 * ctx.noise_sigma();
    RnsPoly s_q = make_poly(ctx, ctx.q_limbs(), 0, PolyDomain::ntt);
    for (std::size_t j = 0; j < s_q.q_rows(); ++j) {
        std::copy_n(ks.sk.s_ntt.row(j), ctx.n(), s_q.row(j));
    }
    const double pk_res =
        max_residual(ctx, poly_add(ctx, ks.pk.b, negacyclic_mul(ctx, ks.pk.a, s_q)));
    const double evk2_res = eval_key_residual(ctx, ks, ks.evk2);
    const double evk3_res = eval_key_residual(ctx, ks, ks.evk3);
    std::cout << "wrote sk.key pk.key evk2.key evk3.key to " << out_dir << "\n";
    std::cout << "pk residual   |b+a*s|    = " << pk_res << " (bound " << bound << ")\n";
    std::cout << "evk2 residual |k0+s*k1-P*s^2| = " << evk2_res << " (bound " << bound << ")\n";
    std::cout << "evk3 residual |k0+s*k1-P*s^3| = " << evk3_res << " (bound " << bound << ")\n";
    return (pk_res <= bound && evk2_res <= bound && evk3_res <= bound) ? 0 : 1;
}

int cmd_encrypt(const ParamFlags& pf, std::uint64_t seed, const std::string& pk_path,
                const std::string& msg_path, const std::string& out_path,
                const std::string& format) {
    Params ctx = make_params(pf);
    PublicKey pk = io::load_public_key(pk_path, ctx);
    std::vector<double> z = read_reals(msg_path, ctx.n());
    Message msg = encode(ctx, z, ctx.scale());
    Rng rng(seed);
    Ciphertext ct = encrypt(ctx, pk, msg, rng);
    io::save_ciphertext(out_path, ctx, ct, parse_format(format));
    std::cout << "encrypted " << z.size() << " values at scale " << ctx.scale()
              << " -> " << out_path << "\n";
    return 0;
}

int cmd_decrypt(const ParamFlags& pf, const std::string& sk_path, const std::string& in_path,
                const std::string& out_path) {
    Params ctx = make_params(pf);
    SecretKey sk = io::load_secret_key(sk_path, ctx);
    Ciphertext ct = io::load_ciphertext(in_path, ctx);
    Message msg = decrypt(ctx, sk, ct);
    std::vector<double> z = decode(msg);
    std::ostringstream os;
    os.precision(12);
    for (double v : z) os << v << "\n";
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream of(out_path);
        of << os.str();
        std::cout << "decoded " << z.size() << " values (level " << ct.level << ", scale "
                  << ct.scale << ") -> " << out_path << "\n";
    }
    return 0;
}

int cmd_mul2(const ParamFlags& pf, const std::string& a_path, const std::string& b_path,
             const std::string& evk2_path, const std::string& out_path,
             const std::string& format, bool karatsuba) {
    Params ctx = make_params(pf);
    Ciphertext a = io::load_ciphertext(a_path, ctx);
    Ciphertext b = io::load_ciphertext(b_path, ctx);
    EvalKey evk2 = io::load_eval_key(evk2_path, ctx);
    if (evk2.power != 2) throw std::runtime_error("mul2 needs the power-2 key");
    OpCounters ops;
    Ciphertext out = multiply2(ctx, a, b, evk2, &ops, karatsuba);
    io::save_ciphertext(out_path, ctx, out, parse_format(format));
    std::cout << "mul2 ok: level " << a.level << " -> " << out.level << ", scale "
              << out.scale << "; tensor products " << ops.tensor_products
              << ", evk products " << ops.evk_products << ", mod_down " << ops.mod_down_calls
              << "\n";
    return 0;
}

int cmd_mul3(const ParamFlags& pf, const std::string& a_path, const std::string& b_path,
             const std::string& c_path, const std::string& evk2_path,
             const std::string& evk3_path, const std::string& out_path,
             const std::string& format) {
    Params ctx = make_params(pf);
    Ciphertext a = io::load_ciphertext(a_path, ctx);
    Ciphertext b = io::load_ciphertext(b_path, ctx);
    Ciphertext c = io::load_ciphertext(c_path, ctx);
    EvalKey evk2 = io::load_eval_key(evk2_path, ctx);
    EvalKey evk3 = io::load_eval_key(evk3_path, ctx);
    if (evk3.power != 3) {
        throw std::runtime_error("mul3 refuses to run without the cubic evaluation key");
    }
    OpCounters ops;
    Ciphertext out = multiply3(ctx, a, b, c, evk2, evk3, &ops);
    io::save_ciphertext(out_path, ctx, out, parse_format(format));
    std::cout << "mul3 ok: level " << a.level << " -> " << out.level << ", scale "
              << out.scale << "; tensor products " << ops.tensor_products
              << ", evk products " << ops.evk_products << ", mod_down " << ops.mod_down_calls
              << "\n";
    return 0;
}

int cmd_noise_bench(const ParamFlags& pf, std::uint64_t seed, std::size_t trials,
                    double msg_bound, double margin, const std::string& out_dir) {
    Params ctx = make_params(pf);
    if (ctx.q_limbs() < 3) {
        std::cerr << "error: noise-bench needs L >= 3\n";
        return 2;
    }
    KeySet keys = keygen(ctx, seed);
    NoiseLabConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.msg_bound = msg_bound;
    cfg.margin = margin;
    CompareSummary summary = compare_paths(ctx, keys, cfg);
    const std::string table = format_table(summary);
    std::cout << table;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        {
            std::ofstream tf(out_dir + "/noise_table.txt");
            tf << table;
        }
        {
            std::ofstream rf(out_dir + "/noise_records.jsonl");
            write_records_jsonl(rf, summary);
        }
        std::cout << "wrote " << out_dir << "/noise_table.txt and noise_records.jsonl\n";
    }
    if (trials > 1 && !summary.ordering_holds) {
        std::cerr << "ordering assertion FAILED: mean ratio " << summary.mean_ratio
                  << ", max ratio " << summary.max_ratio << "\n";
        return 1;
    }
    if (summary.bound_violations != 0) {
        std::cerr << "per-trial bound check FAILED: " << summary.bound_violations
                  << " trials above " << summary.bound_rhs << "\n";
        return 1;
    }
    return 0;
}

int cmd_hw_report(std::uint64_t n, long long l, long long k, int w, bool sweep,
                  bool assert_claims, bool crosscheck, const std::string& out_path) {
    hw::DesignPoint dp{n, l, k, w};
    hw::Report report = hw::build_report(dp);
    std::cout << report.text;
    if (sweep) {
        std::cout << "\nlatency-ratio sweep:\n";
        for (int logn = 10; logn <= 14; ++logn) {
            hw::DesignPoint p{1ull << logn, l, k, w};
            const double ratio =
                static_cast<double>(hw::latency_cycles(hw::Design::three_input, p)) /
                static_cast<double>(hw::latency_cycles(hw::Design::two_input_x2, p));
            char buf[96];
            std::snprintf(buf, sizeof buf, "  N=2^%-2d  ratio=%.6f\n", logn, ratio);
            std::cout << buf;
        }
    }
    if (crosscheck) {
        Params ctx = Params::toy8();
        KeySet keys = keygen(ctx, 7);
        Rng rng(11);
        Message m = encode(ctx, std::vector<double>{0.1, 0.05}, ctx.scale());
        Ciphertext c1 = encrypt(ctx, keys.pk, m, rng);
        Ciphertext c2 = encrypt(ctx, keys.pk, m, rng);
        Ciphertext c3 = encrypt(ctx, keys.pk, m, rng);
        OpCounters ops3, ops2;
        multiply3(ctx, c1, c2, c3, keys.evk2, keys.evk3, &ops3);
        multiply2(ctx, c1, c2, keys.evk2, &ops2);
        hw::CountCheck cc = hw::crosscheck_counts(ops3, ops2, dp);
        std::cout << "\n" << cc.text;
        if (!cc.mul3_ok || !cc.mul2_ok) return 1;
    }
    if (!out_path.empty()) {
        std::ofstream of(out_path);
        of << report.key_value;
        std::cout << "wrote " << out_path << "\n";
    }
    if (assert_claims) {
        const bool latency_ok = std::abs(report.latency_ratio - 0.5006) <= 1e-4;
        const bool area_ok = report.area_ratio >= 0.66 && report.area_ratio <= 0.76;
        if (!latency_ok || !area_ok) {
            std::cerr << "hw assertions FAILED: latency ratio " << report.latency_ratio
                      << " area ratio " << report.area_ratio << "\n";
            return 1;
        }
        std::cout << "hw assertions passed: latency ratio " << report.latency_ratio
                  << ", area ratio " << report.area_ratio << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leveled RNS-CKKS core with 2- and 3-input ciphertext multiplication"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    ParamFlags pf;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string format = "binary";
    std::string pk_path, sk_path, evk2_path, evk3_path;
    std::string in_a, in_b, in_c, msg_path, out_path;
    std::size_t trials = 100;
    double msg_bound = 1.0 / 256;
    double margin = 1.0;
    int max_inputs = 3;
    bool karatsuba = false;

    auto* kg = app.add_subcommand("keygen", "generate sk/pk and both evaluation keys");
    add_param_flags(kg, pf);
    kg->add_option("--seed", seed, "rng seed")->capture_default_str();
    kg->add_option("--out", out_dir, "output directory")->capture_default_str();
    kg->add_option("--format", format, "file format")->check(CLI::IsMember({"binary", "text"}));
    kg->add_option("--max-inputs", max_inputs, "multiplication arity the keys must support")
        ->check(CLI::IsMember({2, 3}));

    auto* enc = app.add_subcommand("encrypt", "encrypt a real vector from a text file");
    add_param_flags(enc, pf);
    enc->add_option("--seed", seed, "rng seed");
    enc->add_option("--pk", pk_path, "public key file")->required();
    enc->add_option("--message", msg_path, "text file of reals")->required();
    enc->add_option("--out", out_path, "output ciphertext file")->required();
    enc->add_option("--format", format, "file format")->check(CLI::IsMember({"binary", "text"}));

    auto* dec = app.add_subcommand("decrypt", "decrypt and decode a ciphertext");
    add_param_flags(dec, pf);
    dec->add_option("--sk", sk_path, "secret key file")->required();
    dec->add_option("--in", in_a, "ciphertext file")->required();
    dec->add_option("--out", out_path, "write decoded values here instead of stdout");

    auto* m2 = app.add_subcommand("mul2", "multiply two ciphertexts");
    add_param_flags(m2, pf);
    m2->add_option("--in1", in_a)->required();
    m2->add_option("--in2", in_b)->required();
    m2->add_option("--evk2", evk2_path, "power-2 evaluation key")->required();
    m2->add_option("--out", out_path)->required();
    m2->add_option("--format", format)->check(CLI::IsMember({"binary", "text"}));
    m2->add_flag("--karatsuba", karatsuba, "three-product tensoring");

    auto* m3 = app.add_subcommand("mul3", "multiply three ciphertexts in one step");
    add_param_flags(m3, pf);
    m3->add_option("--in1", in_a)->required();
    m3->add_option("--in2", in_b)->required();
    m3->add_option("--in3", in_c)->required();
    m3->add_option("--evk2", evk2_path, "power-2 evaluation key")->required();
    m3->add_option("--evk3", evk3_path, "power-3 evaluation key")->required();
    m3->add_option("--out", out_path)->required();
    m3->add_option("--format", format)->check(CLI::IsMember({"binary", "text"}));

    auto* nb = app.add_subcommand("noise-bench",
                                  "compare 3-input vs chained 2-input noise");
    add_param_flags(nb, pf);
    nb->add_option("--seed", seed, "rng seed")->capture_default_str();
    nb->add_option("--trials", trials, "paired trials")->capture_default_str();
    nb->add_option("--msg-bound", msg_bound, "max |z| of sampled messages")
        ->capture_default_str();
    nb->add_option("--margin", margin, "ordering margin")->capture_default_str();
    nb->add_option("--out", out_dir, "directory for table and records")->default_val("");

    std::uint64_t hw_n = 1ull << 12;
    long long hw_l = 3, hw_k = 3;
    int hw_w = 30;
    bool sweep = false, assert_claims = false, crosscheck = false;
    auto* hwr = app.add_subcommand("hw-report", "gate-count and latency comparison");
    hwr->add_option("--n", hw_n, "ring degree")->capture_default_str();
    hwr->add_option("--l", hw_l, "main limbs L")->capture_default_str();
    hwr->add_option("--k", hw_k, "auxiliary limbs K")->capture_default_str();
    hwr->add_option("--w", hw_w, "residue width")->capture_default_str();
    hwr->add_flag("--sweep", sweep, "latency ratio across N = 2^10..2^14");
    hwr->add_flag("--assert", assert_claims, "fail unless latency/area land on target");
    hwr->add_flag("--crosscheck", crosscheck, "compare against instrumented software run");
    hwr->add_option("--out", out_path, "write machine-readable key-value report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kg->parsed()) return cmd_keygen(pf, seed, out_dir, format, max_inputs);
        if (enc->parsed()) return cmd_encrypt(pf, seed, pk_path, msg_path, out_path, format);
        if (dec->parsed()) return cmd_decrypt(pf, sk_path, in_a, out_path);
        if (m2->parsed())
            return cmd_mul2(pf, in_a, in_b, evk2_path, out_path, format, karatsuba);
        if (m3->parsed())
            return cmd_mul3(pf, in_a, in_b, in_c, evk2_path, evk3_path, out_path, format);
        if (nb->parsed())
            return cmd_noise_bench(pf, seed, trials, msg_bound, margin, out_dir);
        if (hwr->parsed())
            return cmd_hw_report(hw_n, hw_l, hw_k, hw_w, sweep, assert_claims, crosscheck,
                                 out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
