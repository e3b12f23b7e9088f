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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "beamlearn/nonstationary.hpp"
#include "beamlearn/scenario.hpp"
#include "test_support.hpp"

using namespace beamlearn;
namespace bt = beamlearn::testing;

namespace {

struct UniformSource {
    Engine rng;
    double operator()(const Strategy& s, std::int64_t) {
        const double mean = 0.5 + 0.4 * std::sin(s.azimuth) * std::cos(s.elevation);
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < mean ? 1.0 : 0.0;
    }
};

}  // namespace

TEST_CASE("default window is 250") {
    CHECK(DriftConfig{}.window == 250);
    CHECK(ScenarioConfig{}.window == 250);
}

TEST_CASE("frames of a 3W round") {
    const int w = 10;
    const auto frames = frame_layout(3 * w, w);
    REQUIRE(frames.size() == 5);
    CHECK(frames[0].start == 0);
    CHECK(frames[0].passive_end == 0);
    CHECK(frames[0].end == w);
    for (std::size_t k = 1; k < frames.size(); ++k) {
        CHECK(frames[k].start == std::int64_t(k) * w / 2);
        CHECK(frames[k].end - frames[k].start == w);
        // Passive slot = the predecessor's second half.
        CHECK(frames[k].start == frames[k - 1].start + w / 2);
        CHECK(frames[k].passive_end == frames[k - 1].start + w);
    }
    CHECK(frames.back().end == 3 * w);
}

TEST_CASE("acting ranges partition the round") {
    for (std::int64_t len : {1, 9, 10, 11, 25, 30, 31, 257, 1000}) {
        const auto frames = frame_layout(len, 10);
        CHECK(frames.front().passive_end == 0);
        for (std::size_t k = 0; k < frames.size(); ++k) {
            const std::int64_t acts_until = k + 1 < frames.size() ? frames[k + 1].passive_end : len;
            CHECK(frames[k].passive_end < acts_until);
            CHECK(acts_until <= frames[k].end);
        }
        CHECK(frames.back().end == len);
    }
}

TEST_CASE("short rounds are one all-active frame") {
    const auto frames = frame_layout(7, 250);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].end == 7);
}

TEST_CASE("odd or tiny windows are rejected") {
    CHECK_THROWS_AS(frame_layout(100, 9), InputDomainError);
    CHECK_THROWS_AS(frame_layout(100, 0), InputDomainError);
    CHECK_THROWS_AS(run_drifting_blb(UniformSource{Engine(1)}, 100, DriftConfig{9, {}}), InputDomainError);
}

TEST_CASE("learner follows the frame layout step by step") {
    const DriftConfig cfg{20, {}};
    const std::int64_t n = 3000;
    DriftingBlbLearner learner(n, cfg);
    UniformSource src{Engine(5)};
    std::map<std::pair<int, std::int64_t>, std::int64_t> acting_plays;
    while (!learner.done()) {
        const auto& span = learner.round();
        const std::int64_t offset = learner.step() - span.t_start;
        const auto frames = frame_layout(span.length(), cfg.window);

        std::int64_t expected_frame = -1;
        for (std::size_t k = 0; k < frames.size(); ++k) {
            if (offset >= frames[k].passive_end && offset < frames[k].end &&
                (k + 1 == frames.size() || offset < frames[k + 1].passive_end)) {
                expected_frame = std::int64_t(k);
            }
        }
        CHECK(learner.acting_frame() == expected_frame);

        const ArmSet* passive = learner.passive();
        if (passive && offset % (cfg.window / 2) == 0) {
            // Freshly opened frame: nothing recorded yet.
            CHECK(passive->total_plays == 0);
            for (const auto& a : passive->arms) CHECK(a.stats == ArmStats{});
        }
        if (passive) CHECK(passive->total_plays < learner.acting().total_plays);

        const std::size_t arm = learner.select();
        CHECK(arm == ucb1_select(learner.acting()));
        acting_plays[{span.index, learner.acting_frame()}] += 1;
        learner.observe(arm, src(learner.acting().arms[arm].strategy, learner.step()));
    }

    std::map<int, std::int64_t> per_round;
    for (const auto& [key, plays] : acting_plays) per_round[key.first] += plays;
    for (const auto& r : round_schedule(n)) CHECK(per_round[r.index] == r.length());
}

TEST_CASE("empty schedule gives a plain BLB length trace") {
    const auto trace = run_drifting_blb(UniformSource{Engine(3)}, 5000, DriftConfig{});
    REQUIRE(trace.size() == 5000);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(trace.steps[i].step == std::int64_t(i) + 1);
        CHECK(trace.steps[i].m == discretization_m(std::int64_t{1} << trace.steps[i].round, {}));
    }
    // Rounds no longer than W behave exactly like plain BLB.
    const auto plain = run_blb(UniformSource{Engine(3)}, 255, {});
    const auto drift = run_drifting_blb(UniformSource{Engine(3)}, 255, DriftConfig{});
    for (std::size_t i = 0; i < plain.size(); ++i) CHECK(plain.steps[i].strategy == drift.steps[i].strategy);
}

TEST_CASE("elevation series") {
    const auto one = run_blb(UniformSource{Engine(1)}, 1, {});
    const auto s1 = selected_elevation_series(one);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].elevation == doctest::Approx(kHalfPi));

    const auto t = run_blb(UniformSource{Engine(1)}, 777, {});
    const auto s = selected_elevation_series(t);
    REQUIRE(s.size() == 777);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].step == t.steps[i].step);
        CHECK(s[i].elevation == t.steps[i].strategy.elevation);
    }
    CHECK_THROWS_AS(selected_elevation_series(RegretTrace{}), InputDomainError);
}

TEST_CASE("stationary run settles near the oracle elevation") {
    ScenarioConfig cfg;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto r = run_experiment(cfg);
        const auto series = selected_elevation_series(r.trace);
        std::map<double, int> counts;
        for (std::size_t i = series.size() * 9 / 10; i < series.size(); ++i) ++counts[series[i].elevation];
        const auto modal = std::max_element(counts.begin(), counts.end(),
                                            [](auto& a, auto& b) { return a.second < b.second; })->first;
        // The response cannot tell el from -el (with azimuth mirrored).
        const double target = std::abs(r.oracles.front().strategy.elevation);
        CHECK(std::abs(std::abs(modal) - target) <= 2.0 / std::sqrt(double(cfg.ue_config.size())));
    }
}

TEST_CASE("schedule validation and segment lookup") {
    Engine rng(8);
    const auto base = bt::aligned_single_path({4, 4, 0.5}, {2, 2, 0.5}, {1.0, 0.2}, {2.0, 0.1}, 0.1);
    ChangeSchedule sched;
    sched.events.push_back({100, bt::random_paths(rng, 2)});
    sched.events.push_back({250, bt::random_paths(rng, 2)});
    ScheduledEnvironment env(base, sched);
    REQUIRE(env.segments().size() == 3);
    CHECK(env.segment_of(1) == 0);
    CHECK(env.segment_of(99) == 0);
    CHECK(env.segment_of(100) == 1);
    CHECK(env.segment_of(249) == 1);
    CHECK(env.segment_of(250) == 2);
    CHECK(env.segment_of(100000) == 2);
    CHECK(env.at(250).reward_cap() == base.reward_cap());
    // Precoder follows the first path's departure direction.
    const auto f = array_response<double>({4, 4, 0.5}, sched.events[1].paths.front().departure());
    CHECK((env.at(300).precoder() - f).norm() < 1e-15);

    CHECK_NOTHROW(sched.validate(250));
    CHECK_THROWS_AS(sched.validate(249), InputDomainError);
    ChangeSchedule bad;
    bad.events.push_back({50, bt::random_paths(rng, 1)});
    bad.events.push_back({50, bt::random_paths(rng, 1)});
    CHECK_THROWS_AS(bad.validate(100), InputDomainError);
    CHECK_THROWS_AS(ScheduledEnvironment(base, bad), InputDomainError);
}
