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
#ifndef TRIMUL_HWMODEL_HPP
#define TRIMUL_HWMODEL_HPP

#include <cstdint>
#include <string>

#include "trimul/mult.hpp"

// Gate-count and latency model of the 2-parallel ciphertext-multiplier
// datapaths: per-block costs, whole-design totals, XOR-equivalent area and
// cycle counts, plus a crosscheck against the software instrumentation.
namespace trimul::hw {

enum class Block { ntt, intt, mod_up, mod_down, rescaling, poly_mult2, poly_mult3 };

enum class Design { two_input_x2, three_input };

struct DesignPoint {
    std::uint64_t n = 1ull << 12;
    long long l = 3;  // limbs in the main modulus
    long long k = 3;  // limbs in the auxiliary modulus
    int w = 30;       // residue width
    int log_n() const;
};

struct BlockCost {
    long long mod_mults = 0;
    long long mod_adders = 0;
    long long memory_words = 0;     // w-bit words
    long long pipeline_stages = 0;
};

struct DesignCost {
    long long mod_mults = 0;
    long long mod_adders = 0;
    long long memory_words = 0;
    long long delay_elements = 0;  // w-bit pipeline registers
};

/// XOR-equivalence constants. A modular multiplier is three w(w-1)-FA
/// multipliers, two w-FA adders, one comparator and one mux; a modular adder
/// is two w-FA adders, one comparator and one mux. The comparator is modeled
/// as a w-FA subtractor. Delay elements are w-bit registers at 3 XOR per bit.
struct GateCostModel {
    double fa_xor = 4.5;
    double mux_xor = 1.0;
    double mem_bit_xor = 1.0;
    double delay_elem_bit_xor = 3.0;

    double mult_fa(int w) const { return static_cast<double>(w) * (w - 1); }
    double adder_fa(int w) const { return w; }
    double comparator_fa(int w) const { return w; }

    double mod_mult_area(int w) const {
        return (3.0 * mult_fa(w) + 2.0 * adder_fa(w) + comparator_fa(w)) * fa_xor + mux_xor;
    }
    double mod_adder_area(int w) const {
        return (2.0 * adder_fa(w) + comparator_fa(w)) * fa_xor + mux_xor;
    }
};

/// Per-block complexity at a design point.
BlockCost block_cost(Block block, const DesignPoint& dp);

/// Whole-design totals, evaluated exactly as tabulated.
DesignCost total_cost(Design design, const DesignPoint& dp);

/// Independent bottom-up total from the block inventory of each datapath;
/// deviations from total_cost are reported, never reconciled.
DesignCost bottom_up_cost(Design design, const DesignPoint& dp);

long long latency_cycles(Design design, const DesignPoint& dp);

double area_xor_equivalent(Design design, const DesignPoint& dp,
                           const GateCostModel& gates = GateCostModel{});

double area_xor_equivalent(const DesignCost& cost, int w,
                           const GateCostModel& gates = GateCostModel{});

struct CountCheck {
    bool mul3_ok = false;  // 8 tensor products, 3 evk products, 2 ModDowns
    bool mul2_ok = false;  // 3 or 4 tensor products, 2 evk products, 2 ModDowns
    std::string text;
};

/// Puts the instrumented software counts of one multiply3 and one multiply2
/// run beside the model's block counts.
CountCheck crosscheck_counts(const OpCounters& mul3_ops, const OpCounters& mul2_ops,
                             const DesignPoint& dp);

struct Report {
    std::string text;      // aligned table
    std::string key_value; // machine-readable "key value" lines
    double latency_ratio = 0.0;
    double area_ratio = 0.0;
    bool bottom_up_matches = false;
};

Report build_report(const DesignPoint& dp, const GateCostModel& gates = GateCostModel{});

}  // namespace trimul::hw

#endif
