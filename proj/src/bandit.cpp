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

#include "beamlearn/bandit.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace beamlearn {

ArmSet::ArmSet(std::span<const Strategy> strategies) {
    arms.reserve(strategies.size());
    for (const auto& s : strategies) arms.push_back({s, {}});
}

void ArmSet::reset() {
    for (auto& arm : arms) arm.stats = {};
    total_plays = 0;
}

double ucb1_index(const ArmStats& stats, std::int64_t total_plays) {
    if (stats.plays == 0) return std::numeric_limits<double>::infinity();
    const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(total_plays)) /
                                   static_cast<double>(stats.plays));
    return stats.mean_reward + bonus;
}

std::size_t ucb1_select(const ArmSet& set) {
    detail::require(!set.empty(), "ucb1_select: empty arm set");

    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.arms[i].stats.plays == 0) return i;
    }
    std::size_t best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double index = ucb1_index(set.arms[i].stats, set.total_plays);
        if (index > best_index) {
            best_index = index;
            best = i;
        }
    }
    return best;
}

void ucb1_update(ArmSet& set, std::size_t index, double reward) {
    detail::require(index < set.size(), "ucb1_update: arm index out of range");
    detail::ensure(std::isfinite(reward) && reward >= 0.0 && reward <= 1.0,
                   "ucb1_update: reward " + std::to_string(reward) + " outside [0, 1]");
    auto& stats = set.arms[index].stats;
    stats.plays += 1;
    stats.mean_reward += (reward - stats.mean_reward) / static_cast<double>(stats.plays);
    set.total_plays += 1;
}

ArmSet ucb1_updated(ArmSet set, std::size_t index, double reward) {
    ucb1_update(set, index, reward);
    return set;
}

double epsilon_schedule(std::int64_t global_t, double epsilon0) {
    return std::pow(epsilon0, static_cast<double>(global_t) / 10.0);
}

std::size_t greedy_arm(const ArmSet& set) {
    detail::require(!set.empty(), "greedy_arm: empty arm set");
    std::size_t best = 0;
    for (std::size_t i = 1; i < set.size(); ++i) {
        if (set.arms[i].stats.mean_reward > set.arms[best].stats.mean_reward) best = i;
    }
    return best;
}

std::size_t epsilon_greedy_select(const ArmSet& set, std::int64_t global_t, double epsilon0,
                                  Engine& rng) {
    detail::require(!set.empty(), "epsilon_greedy_select: empty arm set");
    detail::require(global_t >= 0, "epsilon_greedy_select: negative time");
    detail::require(epsilon0 > 0.0 && epsilon0 < 1.0, "epsilon_greedy_select: epsilon0 outside (0, 1)");

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon_schedule(global_t, epsilon0)) {
        std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
        return pick(rng);
    }
    return greedy_arm(set);
}

}  // namespace beamlearn
