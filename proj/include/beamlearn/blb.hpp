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

#ifndef BEAMLEARN_BLB_HPP
#define BEAMLEARN_BLB_HPP

// Beam Learning Bandits: doubling rounds, each with a fresh UCB1 instance
// over an M x M (azimuth, elevation) grid whose resolution grows with the
// round length.

#include <concepts>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "beamlearn/array_channel.hpp"
#include "beamlearn/bandit.hpp"
#include "beamlearn/trace.hpp"

namespace beamlearn {

/// Hoelder constants of the normalized cost surface.
struct HolderParams {
    double l_h = 4.0;
    double alpha_h = 1.0;

    void validate() const {
        detail::require(std::isfinite(l_h) && l_h > 0.0, "HolderParams: l_h must be positive");
        detail::require(alpha_h > 0.0 && alpha_h <= 1.0, "HolderParams: alpha_h must lie in (0, 1]");
    }
};

struct GridSpec {
    int m = 0;
    std::vector<Strategy> strategies;  // azimuth-major, m * m entries
};

/// 1 for t_round == 1, otherwise
/// ceil((sqrt(T / ln T) * L_H * 2^(alpha_H / 2))^(1 / (1 + alpha_H))).
int discretization_m(std::int64_t t_round, const HolderParams& h);

/// {2 pi k / m} x {-pi/2 + pi k / m}, k = 1..m.
GridSpec build_grid(int m);

double covering_radius(int m);

struct RoundSpan {
    int index = 0;             // i, with T = 2^i
    std::int64_t t_start = 0;  // T
    std::int64_t t_end = 0;    // min(2T - 1, n)

    std::int64_t length() const noexcept { return t_end - t_start + 1; }
};

/// Doubling schedule covering steps 1..n exactly once.
std::vector<RoundSpan> round_schedule(std::int64_t horizon);

template <typename F>
concept RewardSource = std::invocable<F&, const Strategy&, std::int64_t> &&
                       std::convertible_to<std::invoke_result_t<F&, const Strategy&, std::int64_t>, double>;

/// Step-by-step BLB state machine. run_blb drives it; tests poke at it.
class BlbLearner {
public:
    BlbLearner(std::int64_t horizon, const HolderParams& holder);

    bool done() const noexcept { return step_ > horizon_; }
    std::int64_t step() const noexcept { return step_; }
    std::int64_t horizon() const noexcept { return horizon_; }
    const RoundSpan& round() const { return schedule_[round_pos_]; }
    int m() const noexcept { return grid_.m; }
    const GridSpec& grid() const noexcept { return grid_; }
    const ArmSet& arms() const noexcept { return arms_; }

    std::size_t select() const { return ucb1_select(arms_); }
    void observe(std::size_t arm, double reward);

    const std::vector<RoundRecord>& round_records() const noexcept { return records_; }
    std::vector<RoundRecord> take_round_records() { return std::move(records_); }

private:
    void start_round();

    std::int64_t horizon_;
    HolderParams holder_;
    std::vector<RoundSpan> schedule_;
    std::size_t round_pos_ = 0;
    std::int64_t step_ = 1;
    GridSpec grid_;
    ArmSet arms_;
    std::vector<RoundRecord> records_;
};

template <RewardSource Source>
RegretTrace run_blb(Source&& source, std::int64_t horizon, const HolderParams& holder) {
    BlbLearner learner(horizon, holder);
    RegretTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(horizon));
    while (!learner.done()) {
        const std::int64_t t = learner.step();
        const std::size_t arm = learner.select();
        const Strategy s = learner.arms().arms[arm].strategy;
        const double reward = source(s, t);
        trace.steps.push_back({t, learner.round().index, learner.m(), s, reward});
        learner.observe(arm, reward);
    }
    trace.rounds = learner.take_round_records();
    return trace;
}

/// Fixed M x M grid played with UCB1 for the whole horizon (no rounds).
template <RewardSource Source>
RegretTrace run_ucb1_grid(Source&& source, std::int64_t horizon, int resolution) {
    detail::require(horizon >= 1, "run_ucb1_grid: horizon must be >= 1");
    const GridSpec grid = build_grid(resolution);
    ArmSet arms(grid.strategies);
    RegretTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const std::size_t arm = ucb1_select(arms);
        const Strategy s = arms.arms[arm].strategy;
        const double reward = source(s, t);
        trace.steps.push_back({t, 0, resolution, s, reward});
        ucb1_update(arms, arm, reward);
    }
    return trace;
}

/// Fixed M x M grid played epsilon-greedily with exploration epsilon0^(t/10),
/// t counted from the start of the run.
template <RewardSource Source>
RegretTrace run_epsilon_greedy_grid(Source&& source, std::int64_t horizon, int resolution,
                                    double epsilon0, Engine& exploration_rng) {
    detail::require(horizon >= 1, "run_epsilon_greedy_grid: horizon must be >= 1");
    const GridSpec grid = build_grid(resolution);
    ArmSet arms(grid.strategies);
    RegretTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const std::size_t arm = epsilon_greedy_select(arms, t, epsilon0, exploration_rng);
        const Strategy s = arms.arms[arm].strategy;
        const double reward = source(s, t);
        trace.steps.push_back({t, 0, resolution, s, reward});
        ucb1_update(arms, arm, reward);
    }
    return trace;
}

}  // namespace beamlearn

#endif  // BEAMLEARN_BLB_HPP
