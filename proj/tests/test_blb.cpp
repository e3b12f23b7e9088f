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
#include <random>
#include <vector>

#include "beamlearn/blb.hpp"

using namespace beamlearn;

namespace {

// Bernoulli rewards whose mean falls off linearly with distance from `best`.
struct ConeSource {
    Strategy best;
    Engine rng;
    double operator()(const Strategy& s, std::int64_t) {
        const double mean = std::max(0.0, 1.0 - 2.0 * distance(s, best));
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < mean ? 1.0 : 0.0;
    }
};

}  // namespace

TEST_CASE("discretization examples") {
    const HolderParams h{4.0, 1.0};
    CHECK(discretization_m(1, h) == 1);
    CHECK(discretization_m(16, h) == 4);
    CHECK(discretization_m(32, h) == 5);
    CHECK_THROWS_AS(discretization_m(0, h), InputDomainError);
    CHECK_THROWS_AS(discretization_m(16, HolderParams{4.0, 0.0}), InputDomainError);
    CHECK_THROWS_AS(discretization_m(16, HolderParams{-1.0, 1.0}), InputDomainError);
}

TEST_CASE("discretization grows with the round length") {
    const HolderParams h{4.0, 1.0};
    int prev = discretization_m(2, h);
    for (int i = 2; i <= 20; ++i) {
        const int m = discretization_m(std::int64_t{1} << i, h);
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("grid construction") {
    const auto g1 = build_grid(1);
    REQUIRE(g1.strategies.size() == 1);
    CHECK(g1.strategies[0].azimuth == doctest::Approx(kTwoPi));
    CHECK(g1.strategies[0].elevation == doctest::Approx(kHalfPi));

    const auto g2 = build_grid(2);
    REQUIRE(g2.strategies.size() == 4);
    const std::vector<Strategy> expected{{kPi, 0.0}, {kPi, kHalfPi}, {kTwoPi, 0.0}, {kTwoPi, kHalfPi}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g2.strategies[i].azimuth == doctest::Approx(expected[i].azimuth));
        CHECK(g2.strategies[i].elevation == doctest::Approx(expected[i].elevation));
    }

    for (int m = 1; m <= 40; ++m) {
        const auto g = build_grid(m);
        CHECK(g.strategies.size() == static_cast<std::size_t>(m * m));
        for (const auto& s : g.strategies) CHECK(s.in_domain());
    }
    CHECK_THROWS_AS(build_grid(0), InputDomainError);
}

TEST_CASE("covering radius bounds the distance to the nearest arm") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> az(0.0, kTwoPi), el(-kHalfPi, kHalfPi);
    for (int m : {1, 3, 8, 17}) {
        const auto g = build_grid(m);
        const double r = covering_radius(m);
        for (int i = 0; i < 2000; ++i) {
            const Strategy p{az(rng), el(rng)};
            double best = INFINITY;
            for (const auto& s : g.strategies) {
                const double daz = std::abs(p.azimuth - s.azimuth);
                best = std::min(best, std::hypot(std::min(daz, kTwoPi - daz), p.elevation - s.elevation));
            }
            CHECK(best <= r + 1e-12);
        }
        // The corner (pi/m, -pi/2) attains it.
        CHECK(std::hypot(kPi / m, kPi / m) == doctest::Approx(r));
    }
}

TEST_CASE("round schedule doubles and covers every step once") {
    const auto r7 = round_schedule(7);
    REQUIRE(r7.size() == 3);
    CHECK(r7[0].length() == 1);
    CHECK(r7[1].length() == 2);
    CHECK(r7[2].length() == 4);
    for (std::int64_t n : {1, 2, 3, 10, 1000, 65536}) {
        std::int64_t next = 1;
        for (const auto& r : round_schedule(n)) {
            CHECK(r.t_start == (std::int64_t{1} << r.index));
            CHECK(r.t_start == next);
            next = r.t_end + 1;
        }
        CHECK(next == n + 1);
    }
    CHECK_THROWS_AS(round_schedule(0), InputDomainError);
}

TEST_CASE("run_blb covers the horizon round by round") {
    for (std::int64_t n : {1, 7, 10, 1000}) {
        ConeSource src{{1.0, 0.3}, Engine(1)};
        const auto trace = run_blb(src, n, {});
        REQUIRE(trace.size() == static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < trace.size(); ++i) CHECK(trace.steps[i].step == std::int64_t(i) + 1);
        CHECK(trace.steps[0].m == 1);
        CHECK(trace.steps[0].strategy.azimuth == doctest::Approx(kTwoPi));
        CHECK(trace.steps[0].strategy.elevation == doctest::Approx(kHalfPi));
        for (const auto& r : trace.rounds) {
            std::int64_t plays = 0;
            for (const auto& s : r.final_stats) plays += s.plays;
            CHECK(plays == r.t_end - r.t_start + 1);
            CHECK(r.final_stats.size() == static_cast<std::size_t>(r.m * r.m));
            CHECK(r.covering_radius == doctest::Approx(covering_radius(r.m)));
        }
    }
    const auto t7 = run_blb(ConeSource{{1.0, 0.3}, Engine(1)}, 7, {});
    REQUIRE(t7.rounds.size() == 3);
    CHECK(t7.rounds[2].t_start == 4);
    CHECK(t7.rounds[2].t_end == 7);
}

TEST_CASE("run_blb rejects a zero horizon") {
    CHECK_THROWS_AS(run_blb(ConeSource{{1.0, 0.3}, Engine(1)}, 0, {}), InputDomainError);
    CHECK_THROWS_AS(run_ucb1_grid(ConeSource{{1.0, 0.3}, Engine(1)}, 0, 5), InputDomainError);
}

TEST_CASE("identical seeds give identical traces") {
    const auto a = run_blb(ConeSource{{2.0, -0.4}, Engine(9)}, 3000, {});
    const auto b = run_blb(ConeSource{{2.0, -0.4}, Engine(9)}, 3000, {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.steps[i].strategy == b.steps[i].strategy);
        CHECK(a.steps[i].reward == b.steps[i].reward);
    }
}

TEST_CASE("an on-grid optimum collects the most plays of its round") {
    // Round 14 (T = 16384) has M = 16 and 50 M^2 = 12800 <= T.
    const HolderParams h{};
    const int m = discretization_m(16384, h);
    REQUIRE(50 * m * m <= 16384);
    const auto grid = build_grid(m);
    const std::size_t target = 5 * m + 9;
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ConeSource src{grid.strategies[target], Engine(seed)};
        const auto trace = run_blb(src, 32767, h);
        const auto& last = trace.rounds.back();
        REQUIRE(last.t_start == 16384);
        std::int64_t best_other = 0;
        for (std::size_t i = 0; i < last.final_stats.size(); ++i) {
            if (i != target) best_other = std::max(best_other, last.final_stats[i].plays);
        }
        wins += last.final_stats[target].plays > best_other;
    }
    CHECK(wins == 20);
}

TEST_CASE("fixed grid baselines keep one arm set for the whole run") {
    const auto u = run_ucb1_grid(ConeSource{{1.0, 0.3}, Engine(3)}, 500, 5);
    REQUIRE(u.size() == 500);
    for (int i = 0; i < 25; ++i) CHECK(u.steps[i].strategy == build_grid(5).strategies[i]);
    for (const auto& s : u.steps) CHECK(s.m == 5);

    Engine explore(4);
    const auto e = run_epsilon_greedy_grid(ConeSource{{1.0, 0.3}, Engine(3)}, 500, 5, 0.9, explore);
    REQUIRE(e.size() == 500);
    for (const auto& s : e.steps) CHECK(s.round == 0);
}
