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
#ifndef TRIMUL_NOISE_HPP
#define TRIMUL_NOISE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "trimul/mult.hpp"
#include "trimul/oracle.hpp"

namespace trimul {

enum class MulPath { three_input, chained_two_input };

const char* to_string(MulPath path);

/// One trial: centered infinity-norm of (decrypted - exact product target),
/// in integer units at the final scale, plus stage residuals.
struct NoiseRecord {
    std::uint64_t trial_seed = 0;
    MulPath path = MulPath::three_input;
    double max_abs_error = 0.0;
    double tensor_residual = 0.0;   // pre-relinearization noise vs exact message product
    double relin_residual = 0.0;    // noise added by relinearization
    double rescale_residual = 0.0;  // noise added by the final rescalings
};

struct NoiseLabConfig {
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    /// Messages are drawn uniformly from [-msg_bound, msg_bound]. The
    /// default keeps encode's headroom and puts the trials in the regime
    /// where the two paths separate instead of drowning in shared noise.
    double msg_bound = 1.0 / 256;
    /// Ordering assertion passes when aggregate(three) <= margin * aggregate(chained).
    double margin = 1.0;
    bool per_stage = true;  // collect stage residuals (slower)
};

/// Empirically measured noise constituents, in integer units.
struct NoiseComponents {
    double fresh_b = 0.0;   // fresh encryption noise bound B
    double relin_b = 0.0;   // relinearization-only residual
    double round_b = 0.0;   // rescale rounding residual
    double relin_min = 0.0; // spread of the relinearization residual
    double relin_max = 0.0;
};

struct PathAggregate {
    double mean_error = 0.0;
    double max_error = 0.0;
};

struct CompareSummary {
    std::vector<NoiseRecord> three;
    std::vector<NoiseRecord> chained;
    PathAggregate agg_three;
    PathAggregate agg_chained;
    double mean_ratio = 0.0;  // three / chained
    double max_ratio = 0.0;
    bool ordering_holds = false;      // mean and max of three <= margin * chained
    NoiseComponents components;
    double bound_rhs = 0.0;           // upper bound on the 3-input error, ring-factored
    std::size_t bound_violations = 0; // trials with error above bound_rhs
    double chained_bound_rhs = 0.0;   // analogous bound for the chained path (report only)
    double msg_bound = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

std::vector<NoiseRecord> measure_noise(const Params& ctx, const KeySet& keys, MulPath path,
                                       const NoiseLabConfig& cfg);

/// Runs both paths on identical inputs per trial and checks the aggregate
/// ordering and the per-trial upper bound for the 3-input path.
CompareSummary compare_paths(const Params& ctx, const KeySet& keys,
                             const NoiseLabConfig& cfg);

NoiseComponents estimate_components(const Params& ctx, const KeySet& keys,
                                    std::size_t trials, std::uint64_t seed);

/// Upper bound on the 3-input noise from the measured components, with the
/// ring-expansion factor N applied per polynomial product.
double noise_bound_three_input(const Params& ctx, double msg_bound,
                               const NoiseComponents& comps);
double noise_bound_chained(const Params& ctx, double msg_bound,
                           const NoiseComponents& comps);

std::string format_table(const CompareSummary& summary);
void write_records_jsonl(std::ostream& os, const CompareSummary& summary);

}  // namespace trimul

#endif
