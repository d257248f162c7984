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
#include "trimul/hwmodel.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace trimul::hw {

int DesignPoint::log_n() const {
    if (!std::has_single_bit(n)) throw std::invalid_argument("n must be a power of two");
    return std::countr_zero(n);
}

BlockCost block_cost(Block block, const DesignPoint& dp) {
    const long long logn = dp.log_n();
    const long long n = static_cast<long long>(dp.n);
    const long long l = dp.l;
    const long long k = dp.k;
    switch (block) {
        case Block::ntt:
            return {logn, 2 * logn, (n / 2) * logn, n / 2 - 1 + 5 * logn};
        case Block::intt:
            return {logn, 4 * logn, (n / 2) * logn, n / 2 - 1 + 5 * logn};
        case Block::mod_up:
            return {2 * l + 2 * l * k, 2 * (l - 1), l + l * k, 7};
        case Block::mod_down:
            return {2 * l + 2 * k + 2 * l * k, 2 * k, k + l * k, 10};
        case Block::rescaling:
            return {2 * (l - 1), 2 * (l - 1), l * (l - 1) / 2, 4};
        case Block::poly_mult2:
            return {6 * l, 8 * l, 0, 4};
        case Block::poly_mult3:
            return {16 * l, 18 * l, 0, 8};
    }
    throw std::invalid_argument("unknown block");
}

DesignCost total_cost(Design design, const DesignPoint& dp) {
    const long long logn = dp.log_n();
    const long long n = static_cast<long long>(dp.n);
    const long long l = dp.l;
    const long long k = dp.k;
    DesignCost c;
    if (design == Design::two_input_x2) {
        c.mod_mults = (18 * l + 6 * k) * logn - 8 + 40 * l + 16 * k + 12 * l * k;
        c.mod_adders = (56 * l + 20 * k) * logn - 8 + 32 * l + 12 * l * k - 2 * k;
        c.memory_words = (l + k) * n * logn + l + k + 2 * l * k + l * (l - 1) / 2;
        c.delay_elements = (60 * l + 12 * k) * (n / 2 - 1 + 5 * logn) + 440 * l + 40 * k;
    } else {
        c.mod_mults = (12 * l + 4 * k) * logn - 12 + 35 * l + 7 * k + 8 * l * k;
        c.mod_adders = (36 * l + 12 * k) * logn + 34 * l + 8 * l * k - 12;
        c.memory_words = (l + k) * n * logn + l + k + 2 * l * k + l * (l - 1) / 2;
        c.delay_elements = (40 * l + 8 * k) * (n / 2 - 1 + 5 * logn) + 386 * l + 34 * k;
    }
    return c;
}

namespace {

struct BlockInventory {
    long long ntt = 0;        // per-limb transform datapaths
    long long intt = 0;
    long long mod_up = 0;
    long long mod_down = 0;
    long long rescale_full = 0;   // rescaling blocks at l limbs
    long long rescale_small = 0;  // rescaling blocks at l-1 limbs
    long long poly_mult2 = 0;
    long long poly_mult3 = 0;
    long long evk_mult_lanes = 0; // plain pointwise key products, 2-parallel lanes
    long long extra_adder_lanes = 0;  // relin output additions and merged-input adders
};

// Datapath inventories as read off the two block diagrams. Input transforms
// run per limb; the ModUp output only needs transforms on the k new rows
// because the pass-through rows are already available transformed.
BlockInventory inventory(Design design, const DesignPoint& dp) {
    const long long l = dp.l;
    const long long k = dp.k;
    BlockInventory inv;
    if (design == Design::two_input_x2) {
        inv.ntt = 4 * l + k;
        inv.intt = l + 2 * (l + k) + 2 * l;
        inv.mod_up = 1;
        inv.mod_down = 2;
        inv.rescale_full = 2;
        inv.poly_mult2 = 1;
        inv.evk_mult_lanes = 2 * 2 * (l + k);  // two key components, 2-parallel
        inv.extra_adder_lanes = 4;             // adding ModDown outputs into d0, d1
        // two concatenated instances
        inv.ntt *= 2; inv.intt *= 2; inv.mod_up *= 2; inv.mod_down *= 2;
        inv.rescale_full *= 2; inv.poly_mult2 *= 2; inv.evk_mult_lanes *= 2;
        inv.extra_adder_lanes *= 2;
    } else {
        inv.ntt = 6 * l + 2 * k;
        inv.intt = 2 * l + 2 * (l + k) + 2 * l;
        inv.mod_up = 2;
        inv.mod_down = 2;
        inv.rescale_full = 2;
        inv.rescale_small = 2;
        inv.poly_mult3 = 1;
        inv.evk_mult_lanes = 3 * 2 * (l + k);  // three key products after merging
        // u2+u3 ahead of the shared-k1 product, the two k0 products summed
        // ahead of ModDown, and the additions into d0, d1
        inv.extra_adder_lanes = 2 * (l + k) + 2 * (l + k) + 4;
    }
    return inv;
}

}  // namespace

DesignCost bottom_up_cost(Design design, const DesignPoint& dp) {
    const BlockInventory inv = inventory(design, dp);
    DesignPoint small = dp;
    small.l = dp.l - 1;

    const BlockCost ntt = block_cost(Block::ntt, dp);
    const BlockCost intt = block_cost(Block::intt, dp);
    const BlockCost up = block_cost(Block::mod_up, dp);
    const BlockCost down = block_cost(Block::mod_down, dp);
    const BlockCost rs_full = block_cost(Block::rescaling, dp);
    const BlockCost rs_small = block_cost(Block::rescaling, small);
    const BlockCost pm2 = block_cost(Block::poly_mult2, dp);
    const BlockCost pm3 = block_cost(Block::poly_mult3, dp);

    DesignCost c;
    c.mod_mults = inv.ntt * ntt.mod_mults + inv.intt * intt.mod_mults +
                  inv.mod_up * up.mod_mults + inv.mod_down * down.mod_mults +
                  inv.rescale_full * rs_full.mod_mults +
                  inv.rescale_small * rs_small.mod_mults +
                  inv.poly_mult2 * pm2.mod_mults + inv.poly_mult3 * pm3.mod_mults +
                  inv.evk_mult_lanes;
    c.mod_adders = inv.ntt * ntt.mod_adders + inv.intt * intt.mod_adders +
                   inv.mod_up * up.mod_adders + inv.mod_down * down.mod_adders +
                   inv.rescale_full * rs_full.mod_adders +
                   inv.rescale_small * rs_small.mod_adders +
                   inv.poly_mult2 * pm2.mod_adders + inv.poly_mult3 * pm3.mod_adders +
                   inv.extra_adder_lanes;
    // twiddle and constant memories are shared: one forward and one inverse
    // table per modulus, one ModUp/ModDown constant set, one triangular
    // rescaling table per design
    const long long logn = dp.log_n();
    const long long n = static_cast<long long>(dp.n);
    c.memory_words = (dp.l + dp.k) * n * logn + up.memory_words + down.memory_words +
                     rs_full.memory_words;
    // pipeline registers, two w-bit lanes per stage
    c.delay_elements = 2 * (inv.ntt * ntt.pipeline_stages + inv.intt * intt.pipeline_stages +
                            inv.mod_up * up.pipeline_stages +
                            inv.mod_down * down.pipeline_stages +
                            inv.rescale_full * rs_full.pipeline_stages +
                            inv.rescale_small * rs_small.pipeline_stages +
                            inv.poly_mult2 * pm2.pipeline_stages +
                            inv.poly_mult3 * pm3.pipeline_stages);
    return c;
}

long long latency_cycles(Design design, const DesignPoint& dp) {
    const long long logn = dp.log_n();
    const long long n = static_cast<long long>(dp.n);
    if (design == Design::two_input_x2) return 4 * n + 40 * logn + 46;
    return 2 * n + 20 * logn + 32;
}

double area_xor_equivalent(const DesignCost& cost, int w, const GateCostModel& gates) {
    return static_cast<double>(cost.mod_mults) * gates.mod_mult_area(w) +
           static_cast<double>(cost.mod_adders) * gates.mod_adder_area(w) +
           static_cast<double>(cost.memory_words) * w * gates.mem_bit_xor +
           static_cast<double>(cost.delay_elements) * w * gates.delay_elem_bit_xor;
}

double area_xor_equivalent(Design design, const DesignPoint& dp, const GateCostModel& gates) {
    return area_xor_equivalent(total_cost(design, dp), dp.w, gates);
}

CountCheck crosscheck_counts(const OpCounters& mul3_ops, const OpCounters& mul2_ops,
                             const DesignPoint& dp) {
    CountCheck cc;
    cc.mul3_ok = mul3_ops.tensor_products == 8 && mul3_ops.evk_products == 3 &&
                 mul3_ops.mod_down_calls == 2;
    cc.mul2_ok = (mul2_ops.tensor_products == 3 || mul2_ops.tensor_products == 4) &&
                 mul2_ops.evk_products == 2 && mul2_ops.mod_down_calls == 2;

    std::ostringstream os;
    char buf[160];
    os << "software instrumentation vs model block counts\n";
    std::snprintf(buf, sizeof buf,
                  "multiply3: tensor_products=%zu (expect 8) evk_products=%zu (expect 3) "
                  "mod_down=%zu (expect 2) -> %s\n",
                  mul3_ops.tensor_products, mul3_ops.evk_products, mul3_ops.mod_down_calls,
                  cc.mul3_ok ? "ok" : "MISMATCH");
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "multiply2: tensor_products=%zu (expect 4 direct / 3 karatsuba) "
                  "evk_products=%zu (expect 2) mod_down=%zu (expect 2) -> %s\n",
                  mul2_ops.tensor_products, mul2_ops.evk_products, mul2_ops.mod_down_calls,
                  cc.mul2_ok ? "ok" : "MISMATCH");
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "multiply3 transforms: ntt=%zu intt=%zu; mod_up=%zu\n",
                  mul3_ops.ntt_calls, mul3_ops.intt_calls, mul3_ops.mod_up_calls);
    os << buf;
    const BlockCost pm3 = block_cost(Block::poly_mult3, dp);
    std::snprintf(buf, sizeof buf,
                  "model: 3-input tensor datapath has %lld modular multipliers "
                  "(8 products x 2 lanes x %lld limbs)\n",
                  pm3.mod_mults, dp.l);
    os << buf;
    cc.text = os.str();
    return cc;
}

namespace {
void emit_row(std::ostringstream& os, const char* name, long long a, long long b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-18s %14lld %14lld\n", name, a, b);
    os << buf;
}
}  // namespace

Report build_report(const DesignPoint& dp, const GateCostModel& gates) {
    Report r;
    const DesignCost two = total_cost(Design::two_input_x2, dp);
    const DesignCost three = total_cost(Design::three_input, dp);
    const DesignCost two_bu = bottom_up_cost(Design::two_input_x2, dp);
    const DesignCost three_bu = bottom_up_cost(Design::three_input, dp);
    const long long lat2 = latency_cycles(Design::two_input_x2, dp);
    const long long lat3 = latency_cycles(Design::three_input, dp);
    const double area2 = area_xor_equivalent(two, dp.w, gates);
    const double area3 = area_xor_equivalent(three, dp.w, gates);
    r.latency_ratio = static_cast<double>(lat3) / static_cast<double>(lat2);
    r.area_ratio = area3 / area2;
    r.bottom_up_matches = two.mod_mults == two_bu.mod_mults &&
                          two.memory_words == two_bu.memory_words &&
                          three.memory_words == three_bu.memory_words;

    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "design point: N=%llu (logN=%d) L=%lld K=%lld w=%d\n",
                  static_cast<unsigned long long>(dp.n), dp.log_n(), dp.l, dp.k, dp.w);
    os << buf;
    os << "                     2x 2-input       3-input\n";
    emit_row(os, "mod mults", two.mod_mults, three.mod_mults);
    emit_row(os, "mod adders", two.mod_adders, three.mod_adders);
    emit_row(os, "memory words", two.memory_words, three.memory_words);
    emit_row(os, "delay elements", two.delay_elements, three.delay_elements);
    emit_row(os, "latency (clk)", lat2, lat3);
    std::snprintf(buf, sizeof buf, "latency ratio: %.6f\n", r.latency_ratio);
    os << buf;
    std::snprintf(buf, sizeof buf, "area (XOR eq.): %.0f vs %.0f, ratio %.4f (%.1f%% saving)\n",
                  area2, area3, r.area_ratio, 100.0 * (1.0 - r.area_ratio));
    os << buf;
    os << "assumptions: comparator = w full adders; delay element = w-bit register "
          "at 3 XOR per bit; shared twiddle memory counted once per design\n";
    os << "bottom-up block sums (deviations from the tabulated totals are listed, "
          "not reconciled):\n";
    emit_row(os, "  mod mults", two_bu.mod_mults, three_bu.mod_mults);
    emit_row(os, "  mod adders", two_bu.mod_adders, three_bu.mod_adders);
    emit_row(os, "  memory words", two_bu.memory_words, three_bu.memory_words);
    emit_row(os, "  delay elements", two_bu.delay_elements, three_bu.delay_elements);
    auto delta = [&](const char* name, long long printed, long long bu, const char* design) {
        if (printed != bu) {
            std::snprintf(buf, sizeof buf, "  note: %s %s differs: tabulated %lld vs "
                          "bottom-up %lld\n", design, name, printed, bu);
            os << buf;
        }
    };
    delta("mod mults", two.mod_mults, two_bu.mod_mults, "2x2-input");
    delta("mod adders", two.mod_adders, two_bu.mod_adders, "2x2-input");
    delta("memory words", two.memory_words, two_bu.memory_words, "2x2-input");
    delta("delay elements", two.delay_elements, two_bu.delay_elements, "2x2-input");
    delta("mod mults", three.mod_mults, three_bu.mod_mults, "3-input");
    delta("mod adders", three.mod_adders, three_bu.mod_adders, "3-input");
    delta("memory words", three.memory_words, three_bu.memory_words, "3-input");
    delta("delay elements", three.delay_elements, three_bu.delay_elements, "3-input");
    r.text = os.str();

    std::ostringstream kv;
    kv << "n " << dp.n << "\nlog_n " << dp.log_n() << "\nl " << dp.l << "\nk " << dp.k
       << "\nw " << dp.w << "\n";
    kv << "two_x2.mod_mults " << two.mod_mults << "\n";
    kv << "two_x2.mod_adders " << two.mod_adders << "\n";
    kv << "two_x2.memory_words " << two.memory_words << "\n";
    kv << "two_x2.delay_elements " << two.delay_elements << "\n";
    kv << "two_x2.latency " << lat2 << "\n";
    std::snprintf(buf, sizeof buf, "two_x2.area_xor %.6f\n", area2);
    kv << buf;
    kv << "three.mod_mults " << three.mod_mults << "\n";
    kv << "three.mod_adders " << three.mod_adders << "\n";
    kv << "three.memory_words " << three.memory_words << "\n";
    kv << "three.delay_elements " << three.delay_elements << "\n";
    kv << "three.latency " << lat3 << "\n";
    std::snprintf(buf, sizeof buf, "three.area_xor %.6f\n", area3);
    kv << buf;
    std::snprintf(buf, sizeof buf, "latency_ratio %.6f\narea_ratio %.6f\n", r.latency_ratio,
                  r.area_ratio);
    kv << buf;
    r.key_value = kv.str();
    return r;
}

}  // namespace trimul::hw
