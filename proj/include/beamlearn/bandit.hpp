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

#ifndef BEAMLEARN_BANDIT_HPP
#define BEAMLEARN_BANDIT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "beamlearn/array_channel.hpp"
#include "beamlearn/rng.hpp"

namespace beamlearn {

struct ArmStats {
    std::int64_t plays = 0;
    double mean_reward = 0.0;  // 0 while unplayed

    friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

struct Arm {
    Strategy strategy;
    ArmStats stats;
};

/// Finite arm set with running statistics. total_plays is the UCB1 clock of
/// this instance, i.e. it restarts whenever a fresh set is built.
struct ArmSet {
    std::vector<Arm> arms;
    std::int64_t total_plays = 0;

    ArmSet() = default;
    explicit ArmSet(std::span<const Strategy> strategies);

    std::size_t size() const noexcept { return arms.size(); }
    bool empty() const noexcept { return arms.empty(); }
    void reset();
};

/// Lowest-index unplayed arm if any, otherwise argmax of
/// mean + sqrt(2 ln(total_plays) / plays) with lowest-index tie-break.
std::size_t ucb1_select(const ArmSet& set);

double ucb1_index(const ArmStats& stats, std::int64_t total_plays);

/// Running-mean update of the played arm. Rewards must lie in [0, 1].
void ucb1_update(ArmSet& set, std::size_t index, double reward);

/// Pure form: returns the updated copy.
[[nodiscard]] ArmSet ucb1_updated(ArmSet set, std::size_t index, double reward);

/// Exploration probability epsilon0^(global_t / 10).
double epsilon_schedule(std::int64_t global_t, double epsilon0);

/// With probability epsilon_schedule(global_t, epsilon0) a uniformly random
/// arm, otherwise the greedy arm (unplayed arms count as mean 0).
std::size_t epsilon_greedy_select(const ArmSet& set, std::int64_t global_t, double epsilon0,
                                  Engine& rng);

std::size_t greedy_arm(const ArmSet& set);

}  // namespace beamlearn

#endif  // BEAMLEARN_BANDIT_HPP
