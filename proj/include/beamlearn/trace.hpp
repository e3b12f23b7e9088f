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

#ifndef BEAMLEARN_TRACE_HPP
#define BEAMLEARN_TRACE_HPP

#include <cstdint>
#include <vector>

#include "beamlearn/array_channel.hpp"
#include "beamlearn/bandit.hpp"

namespace beamlearn {

struct StepRecord {
    std::int64_t step = 0;  // 1-based
    int round = 0;          // BLB round i (T = 2^i); 0 for fixed-grid learners
    int m = 0;              // grid resolution in force
    Strategy strategy;
    double reward = 0.0;
    double expected_cost = 0.0;      // filled by the harness
    double cumulative_regret = 0.0;  // filled by the harness
    double expected_snr = 0.0;       // unnormalized, filled by the harness
};

struct RoundRecord {
    int round_index = 0;
    std::int64_t t_start = 0;
    std::int64_t t_end = 0;
    int m = 0;
    // Largest distance from a point of the domain to the nearest grid arm
    // (azimuth treated as periodic).
    double covering_radius = 0.0;
    std::vector<ArmStats> final_stats;
};

struct RegretTrace {
    std::vector<StepRecord> steps;
    std::vector<RoundRecord> rounds;
    double oracle_value = 0.0;  // last segment's oracle for nonstationary runs
    double final_average_reward = 0.0;

    std::size_t size() const noexcept { return steps.size(); }
};

}  // namespace beamlearn

#endif  // BEAMLEARN_TRACE_HPP
