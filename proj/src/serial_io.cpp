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
#include "trimul/serial_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trimul::io {

namespace {

constexpr char kMagic[4] = {'T', 'M', 'U', 'L'};
constexpr char kTextMagic[] = "trimul-text";

enum class Kind : std::uint8_t { ciphertext = 1, secret_key = 2, public_key = 3, eval_key = 4 };

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::ciphertext: return "ciphertext";
        case Kind::secret_key: return "secret-key";
        case Kind::public_key: return "public-key";
        case Kind::eval_key: return "eval-key";
    }
    return "?";
}

Kind kind_from_name(const std::string& s) {
    for (Kind k : {Kind::ciphertext, Kind::secret_key, Kind::public_key, Kind::eval_key}) {
        if (s == kind_name(k)) return k;
    }
    throw std::runtime_error("unknown object kind: " + s);
}

// ---- little-endian buffer ------------------------------------------------

struct Writer {
    std::string buf;
    void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
};

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    explicit Reader(const std::string& b) : buf(b) {}
    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw std::runtime_error("truncated file");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
        return v;
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
};

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed: " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---- header ----------------------------------------------------------------

void write_header_binary(Writer& w, const Params& ctx, Kind kind) {
    w.buf.append(kMagic, 4);
    w.u32(kFormatVersion);
    w.u8(static_cast<std::uint8_t>(kind));
    w.u64(ctx.n());
    w.u32(static_cast<std::uint32_t>(ctx.word_bits()));
    w.u32(static_cast<std::uint32_t>(ctx.q_limbs()));
    w.u32(static_cast<std::uint32_t>(ctx.p_limbs()));
    for (std::size_t j = 0; j < ctx.q_limbs(); ++j) w.u64(ctx.q_basis()[j].value);
    for (std::size_t i = 0; i < ctx.p_limbs(); ++i) w.u64(ctx.p_basis()[i].value);
}

Kind read_header_binary(Reader& r, const Params& ctx) {
    r.need(4);
    if (std::memcmp(r.buf.data(), kMagic, 4) != 0) throw std::runtime_error("bad magic");
    r.pos += 4;
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion) {
        throw std::runtime_error("format-version mismatch: file has version " +
                                 std::to_string(version));
    }
    const Kind kind = static_cast<Kind>(r.u8());
    if (r.u64() != ctx.n()) throw std::runtime_error("ring degree mismatch");
    if (r.u32() != static_cast<std::uint32_t>(ctx.word_bits()))
        throw std::runtime_error("word width mismatch");
    if (r.u32() != ctx.q_limbs() || r.u32() != ctx.p_limbs())
        throw std::runtime_error("limb count mismatch");
    for (std::size_t j = 0; j < ctx.q_limbs(); ++j) {
        if (r.u64() != ctx.q_basis()[j].value) throw std::runtime_error("modulus mismatch");
    }
    for (std::size_t i = 0; i < ctx.p_limbs(); ++i) {
        if (r.u64() != ctx.p_basis()[i].value) throw std::runtime_error("modulus mismatch");
    }
    return kind;
}

void write_rows_binary(Writer& w, const RnsPoly& poly) {
    w.u8(static_cast<std::uint8_t>(poly.domain()));
    w.u32(static_cast<std::uint32_t>(poly.q_rows()));
    w.u32(static_cast<std::uint32_t>(poly.p_rows()));
    for (std::uint64_t v : poly.data()) w.u64(v);
}

RnsPoly read_rows_binary(Reader& r, const Params& ctx) {
    const auto domain = static_cast<PolyDomain>(r.u8());
    if (domain != PolyDomain::coefficient && domain != PolyDomain::ntt) {
        throw std::runtime_error("bad domain tag");
    }
    const std::uint32_t q_rows = r.u32();
    const std::uint32_t p_rows = r.u32();
    RnsPoly poly = make_poly(ctx, q_rows, p_rows, domain);
    for (std::size_t j = 0; j < poly.rows(); ++j) {
        const Modulus& m = ctx.row_modulus(poly, j);
        std::uint64_t* row = poly.row(j);
        for (std::size_t i = 0; i < poly.n(); ++i) {
            row[i] = r.u64();
            if (row[i] >= m.value) throw std::runtime_error("residue out of range");
        }
    }
    return poly;
}

// ---- text form -------------------------------------------------------------

const char* domain_name(PolyDomain d) {
    return d == PolyDomain::coefficient ? "coefficient" : "ntt";
}

PolyDomain domain_from_name(const std::string& s) {
    if (s == "coefficient") return PolyDomain::coefficient;
    if (s == "ntt") return PolyDomain::ntt;
    throw std::runtime_error("bad domain tag: " + s);
}

void write_header_text(std::ostringstream& os, const Params& ctx, Kind kind) {
    os << kTextMagic << " " << kFormatVersion << "\n";
    os << "kind: " << kind_name(kind) << "\n";
    os << "n: " << ctx.n() << "\n";
    os << "word-bits: " << ctx.word_bits() << "\n";
    os << "q-limbs: " << ctx.q_limbs() << "\n";
    os << "p-limbs: " << ctx.p_limbs() << "\n";
    os << "q-moduli:";
    for (std::size_t j = 0; j < ctx.q_limbs(); ++j) os << " " << ctx.q_basis()[j].value;
    os << "\np-moduli:";
    for (std::size_t i = 0; i < ctx.p_limbs(); ++i) os << " " << ctx.p_basis()[i].value;
    os << "\n";
}

void write_rows_text(std::ostringstream& os, const std::string& name, const RnsPoly& poly) {
    os << name << "-domain: " << domain_name(poly.domain()) << "\n";
    os << name << "-rows: " << poly.q_rows() << " " << poly.p_rows() << "\n";
    for (std::size_t j = 0; j < poly.rows(); ++j) {
        os << name << "." << j << ":";
        const std::uint64_t* row = poly.row(j);
        for (std::size_t i = 0; i < poly.n(); ++i) os << " " << row[i];
        os << "\n";
    }
}

struct TextReader {
    std::istringstream is;
    explicit TextReader(const std::string& content) : is(content) {}

    std::string expect_key(const std::string& key) {
        std::string line;
        if (!std::getline(is, line)) throw std::runtime_error("truncated text file");
        if (line.rfind(key, 0) != 0) {
            throw std::runtime_error("expected '" + key + "', got '" + line + "'");
        }
        std::string rest = line.substr(key.size());
        if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        return rest;
    }
};

Kind read_header_text(TextReader& tr, const Params& ctx) {
    std::istringstream first(tr.expect_key(kTextMagic));
    std::uint32_t version = 0;
    first >> version;
    if (version != kFormatVersion) {
        throw std::runtime_error("format-version mismatch: file has version " +
                                 std::to_string(version));
    }
    const Kind kind = kind_from_name(tr.expect_key("kind:"));
    if (std::stoull(tr.expect_key("n:")) != ctx.n()) throw std::runtime_error("ring degree mismatch");
    if (std::stoi(tr.expect_key("word-bits:")) != ctx.word_bits())
        throw std::runtime_error("word width mismatch");
    if (std::stoull(tr.expect_key("q-limbs:")) != ctx.q_limbs())
        throw std::runtime_error("limb count mismatch");
    if (std::stoull(tr.expect_key("p-limbs:")) != ctx.p_limbs())
        throw std::runtime_error("limb count mismatch");
    {
        std::istringstream ms(tr.expect_key("q-moduli:"));
        for (std::size_t j = 0; j < ctx.q_limbs(); ++j) {
            std::uint64_t v = 0;
            ms >> v;
            if (v != ctx.q_basis()[j].value) throw std::runtime_error("modulus mismatch");
        }
    }
    {
        std::istringstream ms(tr.expect_key("p-moduli:"));
        for (std::size_t i = 0; i < ctx.p_limbs(); ++i) {
            std::uint64_t v = 0;
            ms >> v;
            if (v != ctx.p_basis()[i].value) throw std::runtime_error("modulus mismatch");
        }
    }
    return kind;
}

RnsPoly read_rows_text(TextReader& tr, const Params& ctx, const std::string& name) {
    const PolyDomain domain = domain_from_name(tr.expect_key(name + "-domain:"));
    std::istringstream rs(tr.expect_key(name + "-rows:"));
    std::size_t q_rows = 0, p_rows = 0;
    rs >> q_rows >> p_rows;
    RnsPoly poly = make_poly(ctx, q_rows, p_rows, domain);
    for (std::size_t j = 0; j < poly.rows(); ++j) {
        std::istringstream ls(tr.expect_key(name + "." + std::to_string(j) + ":"));
        const Modulus& m = ctx.row_modulus(poly, j);
        std::uint64_t* row = poly.row(j);
        for (std::size_t i = 0; i < poly.n(); ++i) {
            if (!(ls >> row[i])) throw std::runtime_error("truncated row");
            if (row[i] >= m.value) throw std::runtime_error("residue out of range");
        }
    }
    return poly;
}

std::string scale_to_text(double scale) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", scale);
    return buf;
}

bool is_binary(const std::string& content) {
    return content.size() >= 4 && std::memcmp(content.data(), kMagic, 4) == 0;
}

}  // namespace

// ---- ciphertext ------------------------------------------------------------

void save_ciphertext(const std::string& path, const Params& ctx, const Ciphertext& ct,
                     FileFormat fmt) {
    if (fmt == FileFormat::binary) {
        Writer w;
        write_header_binary(w, ctx, Kind::ciphertext);
        w.u32(static_cast<std::uint32_t>(ct.level));
        w.f64(ct.scale);
        write_rows_binary(w, ct.c0);
        write_rows_binary(w, ct.c1);
        atomic_write(path, w.buf);
    } else {
        std::ostringstream os;
        write_header_text(os, ctx, Kind::ciphertext);
        os << "level: " << ct.level << "\n";
        os << "scale: " << scale_to_text(ct.scale) << "\n";
        write_rows_text(os, "c0", ct.c0);
        write_rows_text(os, "c1", ct.c1);
        atomic_write(path, os.str());
    }
}

Ciphertext load_ciphertext(const std::string& path, const Params& ctx) {
    const std::string content = read_file(path);
    Ciphertext ct;
    if (is_binary(content)) {
        Reader r(content);
        if (read_header_binary(r, ctx) != Kind::ciphertext) {
            throw std::runtime_error(path + " does not hold a ciphertext");
        }
        ct.level = r.u32();
        ct.scale = r.f64();
        ct.c0 = read_rows_binary(r, ctx);
        ct.c1 = read_rows_binary(r, ctx);
    } else {
        TextReader tr(content);
        if (read_header_text(tr, ctx) != Kind::ciphertext) {
            throw std::runtime_error(path + " does not hold a ciphertext");
        }
        ct.level = std::stoull(tr.expect_key("level:"));
        ct.scale = std::strtod(tr.expect_key("scale:").c_str(), nullptr);
        ct.c0 = read_rows_text(tr, ctx, "c0");
        ct.c1 = read_rows_text(tr, ctx, "c1");
    }
    if (ct.level != ct.c0.q_rows() || ct.level != ct.c1.q_rows()) {
        throw std::runtime_error("ciphertext level disagrees with its rows");
    }
    return ct;
}

// ---- keys -------------------------------------------------------------------

void save_secret_key(const std::string& path, const Params& ctx, const SecretKey& sk,
                     FileFormat fmt) {
    if (fmt == FileFormat::binary) {
        Writer w;
        write_header_binary(w, ctx, Kind::secret_key);
        w.u64(sk.coeffs.size());
        for (std::int8_t c : sk.coeffs) w.u8(static_cast<std::uint8_t>(c));
        atomic_write(path, w.buf);
    } else {
        std::ostringstream os;
        write_header_text(os, ctx, Kind::secret_key);
        os << "s:";
        for (std::int8_t c : sk.coeffs) os << " " << static_cast<int>(c);
        os << "\n";
        atomic_write(path, os.str());
    }
}

SecretKey load_secret_key(const std::string& path, const Params& ctx) {
    const std::string content = read_file(path);
    SecretKey sk;
    if (is_binary(content)) {
        Reader r(content);
        if (read_header_binary(r, ctx) != Kind::secret_key) {
            throw std::runtime_error(path + " does not hold a secret key");
        }
        const std::uint64_t n = r.u64();
        if (n != ctx.n()) throw std::runtime_error("secret length mismatch");
        sk.coeffs.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) sk.coeffs[i] = static_cast<std::int8_t>(r.u8());
    } else {
        TextReader tr(content);
        if (read_header_text(tr, ctx) != Kind::secret_key) {
            throw std::runtime_error(path + " does not hold a secret key");
        }
        std::istringstream ls(tr.expect_key("s:"));
        sk.coeffs.resize(ctx.n());
        for (std::size_t i = 0; i < ctx.n(); ++i) {
            int v = 0;
            if (!(ls >> v)) throw std::runtime_error("truncated secret");
            sk.coeffs[i] = static_cast<std::int8_t>(v);
        }
    }
    for (std::int8_t c : sk.coeffs) {
        if (c < -1 || c > 1) throw std::runtime_error("secret is not ternary");
    }
    sk.s_ntt = embed_signed(ctx, std::vector<std::int64_t>(sk.coeffs.begin(), sk.coeffs.end()),
                            ctx.q_limbs(), ctx.p_limbs());
    ntt_forward(ctx, sk.s_ntt);
    return sk;
}

void save_public_key(const std::string& path, const Params& ctx, const PublicKey& pk,
                     FileFormat fmt) {
    if (fmt == FileFormat::binary) {
        Writer w;
        write_header_binary(w, ctx, Kind::public_key);
        write_rows_binary(w, pk.b);
        write_rows_binary(w, pk.a);
        atomic_write(path, w.buf);
    } else {
        std::ostringstream os;
        write_header_text(os, ctx, Kind::public_key);
        write_rows_text(os, "b", pk.b);
        write_rows_text(os, "a", pk.a);
        atomic_write(path, os.str());
    }
}

PublicKey load_public_key(const std::string& path, const Params& ctx) {
    const std::string content = read_file(path);
    PublicKey pk;
    if (is_binary(content)) {
        Reader r(content);
        if (read_header_binary(r, ctx) != Kind::public_key) {
            throw std::runtime_error(path + " does not hold a public key");
        }
        pk.b = read_rows_binary(r, ctx);
        pk.a = read_rows_binary(r, ctx);
    } else {
        TextReader tr(content);
        if (read_header_text(tr, ctx) != Kind::public_key) {
            throw std::runtime_error(path + " does not hold a public key");
        }
        pk.b = read_rows_text(tr, ctx, "b");
        pk.a = read_rows_text(tr, ctx, "a");
    }
    return pk;
}

void save_eval_key(const std::string& path, const Params& ctx, const EvalKey& evk,
                   FileFormat fmt) {
    if (fmt == FileFormat::binary) {
        Writer w;
        write_header_binary(w, ctx, Kind::eval_key);
        w.u8(static_cast<std::uint8_t>(evk.power));
        write_rows_binary(w, evk.k0);
        write_rows_binary(w, evk.k1);
        atomic_write(path, w.buf);
    } else {
        std::ostringstream os;
        write_header_text(os, ctx, Kind::eval_key);
        os << "power: " << evk.power << "\n";
        write_rows_text(os, "k0", evk.k0);
        write_rows_text(os, "k1", evk.k1);
        atomic_write(path, os.str());
    }
}

EvalKey load_eval_key(const std::string& path, const Params& ctx) {
    const std::string content = read_file(path);
    EvalKey evk;
    if (is_binary(content)) {
        Reader r(content);
        if (read_header_binary(r, ctx) != Kind::eval_key) {
            throw std::runtime_error(path + " does not hold an evaluation key");
        }
        evk.power = r.u8();
        evk.k0 = read_rows_binary(r, ctx);
        evk.k1 = read_rows_binary(r, ctx);
    } else {
        TextReader tr(content);
        if (read_header_text(tr, ctx) != Kind::eval_key) {
            throw std::runtime_error(path + " does not hold an evaluation key");
        }
        evk.power = std::stoi(tr.expect_key("power:"));
        evk.k0 = read_rows_text(tr, ctx, "k0");
        evk.k1 = read_rows_text(tr, ctx, "k1");
    }
    if (evk.power != 2 && evk.power != 3) throw std::runtime_error("bad key power");
    return evk;
}

}  // namespace trimul::io
