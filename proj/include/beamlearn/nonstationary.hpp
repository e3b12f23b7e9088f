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

#ifndef BEAMLEARN_NONSTATIONARY_HPP
#define BEAMLEARN_NONSTATIONARY_HPP

// Drifting BLB for time-varying incumbents. Each BLB round is cut into
// frames of W steps that start every W/2 steps. A frame's first half
// (passive slot) coincides with the previous frame's second half: the
// previous frame's statistics choose the arm and both frames learn from
// the reward. In its second half (active slot) the frame acts on its own
// statistics. The first frame of a round is active throughout.

#include <cstdint>
#include <utility>
#include <vector>

#include "beamlearn/array_channel.hpp"
#include "beamlearn/blb.hpp"

namespace beamlearn {

struct DriftConfig {
    int window = 250;
    HolderParams holder{};

    void validate() const {
        detail::require(window >= 2 && window % 2 == 0, "DriftConfig: window must be even and >= 2");
        holder.validate();
    }
};

struct ChangeEvent {
    std::int64_t step = 0;  // takes effect from this step on
    std::vector<PathComponentd> paths;
};

struct ChangeSchedule {
    std::vector<ChangeEvent> events;

    bool empty() const noexcept { return events.empty(); }
    void validate(std::int64_t horizon) const;
};

/// A piecewise-constant environment: the base environment, then one
/// environment per change event. The BS precoder follows the first path's
/// departure direction after every change.
class ScheduledEnvironment {
public:
    explicit ScheduledEnvironment(Environmentd base, ChangeSchedule schedule = {});

    /// Environment in force at step t (all events with step <= t applied).
    const Environmentd& at(std::int64_t step) const;
    std::size_t segment_of(std::int64_t step) const;

    const std::vector<Environmentd>& segments() const noexcept { return segments_; }
    /// First step of each segment; segment 0 starts at step 1.
    const std::vector<std::int64_t>& segment_starts() const noexcept { return starts_; }
    const ChangeSchedule& schedule() const noexcept { return schedule_; }

private:
    ChangeSchedule schedule_;
    std::vector<Environmentd> segments_;
    std::vector<std::int64_t> starts_;
};

/// Frame layout within one round of `round_length` steps. Offsets are
/// 0-based within the round, end exclusive.
struct FrameSpan {
    std::int64_t start = 0;
    std::int64_t passive_end = 0;  // == start for the all-active first frame
    std::int64_t end = 0;
};

std::vector<FrameSpan> frame_layout(std::int64_t round_length, int window);

class DriftingBlbLearner {
public:
    DriftingBlbLearner(std::int64_t horizon, const DriftConfig& cfg);

    bool done() const noexcept { return step_ > horizon_; }
    std::int64_t step() const noexcept { return step_; }
    const RoundSpan& round() const { return schedule_[round_pos_]; }
    int m() const noexcept { return grid_.m; }
    const GridSpec& grid() const noexcept { return grid_; }

    /// Statistics that pick the arm at the current step.
    const ArmSet& acting() const noexcept { return acting_; }
    /// Statistics of the frame in its passive slot, if one is open.
    const ArmSet* passive() const noexcept { return passive_open_ ? &passive_ : nullptr; }
    /// Index (within the round) of the frame whose statistics act now.
    std::int64_t acting_frame() const noexcept { return acting_frame_; }

    std::size_t select() const { return ucb1_select(acting_); }
    void observe(std::size_t arm, double reward);

    std::vector<RoundRecord> take_round_records() { return std::move(records_); }

private:
    void start_round();
    void enter_step();

    std::int64_t horizon_;
    DriftConfig cfg_;
    std::vector<RoundSpan> schedule_;
    std::size_t round_pos_ = 0;
    std::int64_t step_ = 1;
    GridSpec grid_;
    ArmSet acting_;
    ArmSet passive_;
    bool passive_open_ = false;
    std::int64_t acting_frame_ = 0;
    std::vector<RoundRecord> records_;
};

template <RewardSource Source>
RegretTrace run_drifting_blb(Source&& source, std::int64_t horizon, const DriftConfig& cfg) {
    DriftingBlbLearner learner(horizon, cfg);
    RegretTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(horizon));
    while (!learner.done()) {
        const std::int64_t t = learner.step();
        const std::size_t arm = learner.select();
        const Strategy s = learner.acting().arms[arm].strategy;
        const double reward = source(s, t);
        trace.steps.push_back({t, learner.round().index, learner.m(), s, reward});
        learner.observe(arm, reward);
    }
    trace.rounds = learner.take_round_records();
    return trace;
}

struct ElevationSample {
    std::int64_t step = 0;
    double elevation = 0.0;
};

std::vector<ElevationSample> selected_elevation_series(const RegretTrace& trace);

}  // namespace beamlearn

#endif  // BEAMLEARN_NONSTATIONARY_HPP
