// SPDX-License-Identifier: Apache-2.0
//
// beamlearn: blind mmWave beam-direction learning with continuum-armed bandits
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMLEARN_ANALYSIS_HPP
#define BEAMLEARN_ANALYSIS_HPP

// Verification surface: brute-force oracle, regret bookkeeping, regret
// growth-exponent fit and the empirical Hoelder probe.

#include <cstdint>
#include <span>
#include <vector>

#include "beamlearn/array_channel.hpp"
#include "beamlearn/blb.hpp"
#include "beamlearn/rng.hpp"
#include "beamlearn/trace.hpp"

namespace beamlearn {

struct OracleResult {
    Strategy strategy;
    double value = 0.0;
};

/// Grid search over [0, 2pi] x [-pi/2, pi/2] with `azimuth_resolution` and
/// `elevation_resolution` intervals (endpoints included), then one 10x finer
/// local grid around the best point, then a compass search to the local peak.
OracleResult oracle_optimal(const Environmentd& env, int azimuth_resolution, int elevation_resolution);

/// Square coarse grid.
OracleResult oracle_optimal(const Environmentd& env, int coarse_resolution);

/// R_t = sum_{tau <= t} (oracle_tau - expected_cost_tau).
std::vector<double> cumulative_regret(std::span<const double> oracle_values,
                                      std::span<const double> expected_costs);

/// Constant-oracle form.
std::vector<double> cumulative_regret(double oracle_value, std::span<const double> expected_costs);

/// Least-squares slope of ln R_t against ln t for t in [t_first, t_last],
/// where regret[t - 1] holds R_t. Nonpositive entries are skipped.
double regret_exponent_fit(std::span<const double> regret, std::int64_t t_first, std::int64_t t_last);

struct HolderProbeReport {
    double delta = 0.0;
    double alpha_h = 1.0;
    std::size_t pairs = 0;
    double max_ratio = 0.0;  // empirical L_H
    double mean_ratio = 0.0;
    double median_ratio = 0.0;
    double p99_ratio = 0.0;
    // Slope of ln(max |dC|) against ln(distance) over dyadic distance bins.
    double empirical_exponent = 0.0;
    std::vector<double> ratios;
};

/// Samples strategy pairs with ||s - s'|| <= delta and reports
/// |C(s) - C(s')| / ||s - s'||^alpha_h on the normalized cost.
HolderProbeReport holder_probe(const Environmentd& env, std::size_t num_pairs, double delta,
                               const HolderParams& holder, Engine& rng);

/// Raw-SNR variant of the probe ratio for a single pair (used to check how
/// the ratio scales with transmit power).
double holder_ratio(const Environmentd& env, const Strategy& a, const Strategy& b, double alpha_h,
                    bool normalized);

}  // namespace beamlearn

#endif  // BEAMLEARN_ANALYSIS_HPP
