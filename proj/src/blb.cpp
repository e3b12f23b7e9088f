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

#include "beamlearn/blb.hpp"

#include <algorithm>
#include <cmath>

namespace beamlearn {

int discretization_m(std::int64_t t_round, const HolderParams& h) {
    detail::require(t_round >= 1, "discretization_m: round length must be >= 1");
    h.validate();
    if (t_round == 1) return 1;

    const double t = static_cast<double>(t_round);
    const double base = std::sqrt(t / std::log(t)) * h.l_h * std::pow(2.0, h.alpha_h / 2.0);
    const double m = std::ceil(std::pow(base, 1.0 / (1.0 + h.alpha_h)));
    return std::max(1, static_cast<int>(m));
}

GridSpec build_grid(int m) {
    detail::require(m >= 1, "build_grid: m must be >= 1");
    GridSpec grid{m, {}};
    grid.strategies.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) {
        const double azimuth = kTwoPi * (static_cast<double>(i) / m);
        for (int k = 1; k <= m; ++k) {
            const double elevation = -kHalfPi + kPi * (static_cast<double>(k) / m);
            grid.strategies.push_back({azimuth, elevation});
        }
    }
    return grid;
}

double covering_radius(int m) {
    detail::require(m >= 1, "covering_radius: m must be >= 1");
    // Azimuth wraps, so its half-gap is pi/m; elevation does not, and the
    // lowest row sits pi/m above -pi/2.
    return std::hypot(kPi / m, kPi / m);
}

std::vector<RoundSpan> round_schedule(std::int64_t horizon) {
    detail::require(horizon >= 1, "round_schedule: horizon must be >= 1");
    std::vector<RoundSpan> rounds;
    int index = 0;
    for (std::int64_t t = 1; t <= horizon; t *= 2, ++index) {
        rounds.push_back({index, t, std::min(2 * t - 1, horizon)});
    }
    return rounds;
}

BlbLearner::BlbLearner(std::int64_t horizon, const HolderParams& holder)
    : horizon_(horizon), holder_(holder) {
    detail::require(horizon >= 1, "run_blb: horizon must be >= 1");
    holder_.validate();
    schedule_ = round_schedule(horizon_);
    start_round();
}

void BlbLearner::start_round() {
    const RoundSpan& span = schedule_[round_pos_];
    grid_ = build_grid(discretization_m(span.t_start, holder_));
    arms_ = ArmSet(grid_.strategies);
}

void BlbLearner::observe(std::size_t arm, double reward) {
    detail::ensure(!done(), "BlbLearner: horizon exhausted");
    ucb1_update(arms_, arm, reward);

    const RoundSpan& span = schedule_[round_pos_];
    if (step_ == span.t_end) {
        RoundRecord record{span.index, span.t_start, span.t_end, grid_.m, covering_radius(grid_.m), {}};
        record.final_stats.reserve(arms_.size());
        for (const auto& a : arms_.arms) record.final_stats.push_back(a.stats);
        records_.push_back(std::move(record));
        if (round_pos_ + 1 < schedule_.size()) {
            ++round_pos_;
            ++step_;
            start_round();
            return;
        }
    }
    ++step_;
}

}  // namespace beamlearn
