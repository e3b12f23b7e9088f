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

#include "beamlearn/nonstationary.hpp"

#include <algorithm>
#include <string>

namespace beamlearn {

void ChangeSchedule::validate(std::int64_t horizon) const {
    std::int64_t previous = 0;
    for (const auto& e : events) {
        detail::require(e.step > previous, "ChangeSchedule: steps must be strictly increasing");
        detail::require(e.step >= 1 && e.step <= horizon,
                        "ChangeSchedule: step " + std::to_string(e.step) + " outside [1, horizon]");
        detail::require(!e.paths.empty(), "ChangeSchedule: an event carries no paths");
        previous = e.step;
    }
}

ScheduledEnvironment::ScheduledEnvironment(Environmentd base, ChangeSchedule schedule)
    : schedule_(std::move(schedule)) {
    auto settings = base.settings();
    settings.reward_cap = base.reward_cap();
    const auto bs = base.bs_config();
    const auto ue = base.ue_config();

    segments_.push_back(std::move(base));
    starts_.push_back(1);
    std::int64_t previous = 0;
    for (const auto& e : schedule_.events) {
        detail::require(e.step > previous, "ChangeSchedule: steps must be strictly increasing");
        detail::require(!e.paths.empty(), "ChangeSchedule: an event carries no paths");
        previous = e.step;
        auto channel = synthesize_channel<double>(bs, ue, e.paths);
        auto precoder = array_response<double>(bs, e.paths.front().departure());
        if (e.step <= 1) {
            segments_.front() = Environmentd(std::move(channel), std::move(precoder), settings);
            continue;
        }
        segments_.emplace_back(std::move(channel), std::move(precoder), settings);
        starts_.push_back(e.step);
    }
}

std::size_t ScheduledEnvironment::segment_of(std::int64_t step) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), step);
    return it == starts_.begin() ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
}

const Environmentd& ScheduledEnvironment::at(std::int64_t step) const {
    return segments_[segment_of(step)];
}

std::vector<FrameSpan> frame_layout(std::int64_t round_length, int window) {
    detail::require(round_length >= 1, "frame_layout: empty round");
    detail::require(window >= 2 && window % 2 == 0, "frame_layout: window must be even and >= 2");
    const std::int64_t half = window / 2;
    if (round_length <= window) return {{0, 0, round_length}};

    std::vector<FrameSpan> frames{{0, 0, window}};
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t passive_end = (k + 1) * half;
        if (passive_end >= round_length) break;  // never acts
        frames.push_back({k * half, passive_end, std::min(k * half + window, round_length)});
    }
    return frames;
}

DriftingBlbLearner::DriftingBlbLearner(std::int64_t horizon, const DriftConfig& cfg)
    : horizon_(horizon), cfg_(cfg) {
    detail::require(horizon >= 1, "run_drifting_blb: horizon must be >= 1");
    cfg_.validate();
    schedule_ = round_schedule(horizon_);
    start_round();
}

void DriftingBlbLearner::start_round() {
    const RoundSpan& span = schedule_[round_pos_];
    grid_ = build_grid(discretization_m(span.t_start, cfg_.holder));
    acting_ = ArmSet(grid_.strategies);
    passive_ = ArmSet(grid_.strategies);
    passive_open_ = false;
    acting_frame_ = 0;
}

void DriftingBlbLearner::enter_step() {
    const RoundSpan& span = schedule_[round_pos_];
    if (span.length() <= cfg_.window) return;

    const std::int64_t half = cfg_.window / 2;
    const std::int64_t offset = step_ - span.t_start;
    if (offset == 0 || offset % half != 0) return;

    if (offset >= 2 * half) {
        // The passive frame takes over; a fresh frame opens its passive slot.
        std::swap(acting_, passive_);
        ++acting_frame_;
    }
    passive_.reset();
    passive_open_ = true;
}

void DriftingBlbLearner::observe(std::size_t arm, double reward) {
    detail::ensure(!done(), "DriftingBlbLearner: horizon exhausted");
    ucb1_update(acting_, arm, reward);
    if (passive_open_) ucb1_update(passive_, arm, reward);

    const RoundSpan& span = schedule_[round_pos_];
    if (step_ == span.t_end) {
        RoundRecord record{span.index, span.t_start, span.t_end, grid_.m, covering_radius(grid_.m), {}};
        for (const auto& a : acting_.arms) record.final_stats.push_back(a.stats);
        records_.push_back(std::move(record));
        ++step_;
        if (round_pos_ + 1 < schedule_.size()) {
            ++round_pos_;
            start_round();
        }
        return;
    }
    ++step_;
    enter_step();
}

std::vector<ElevationSample> selected_elevation_series(const RegretTrace& trace) {
    detail::require(!trace.steps.empty(), "selected_elevation_series: empty trace");
    std::vector<ElevationSample> series;
    series.reserve(trace.steps.size());
    for (const auto& s : trace.steps) series.push_back({s.step, s.strategy.elevation});
    return series;
}

}  // namespace beamlearn
