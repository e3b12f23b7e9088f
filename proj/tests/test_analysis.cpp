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

#include <cmath>
#include <random>
#include <vector>

#include "beamlearn/analysis.hpp"
#include "beamlearn/scenario.hpp"
#include "test_support.hpp"

using namespace beamlearn;
namespace bt = beamlearn::testing;

namespace {

const PlanarArrayConfig kBs{8, 8, 0.5};
const PlanarArrayConfig kUe{4, 4, 0.5};

Environmentd random_environment(Engine& rng, double snr, std::optional<double> cap = {}) {
    auto channel = synthesize_channel<double>(kBs, kUe, bt::random_paths(rng, 5));
    const auto aod = channel.paths.front().departure();
    Environmentd::Settings settings;
    settings.tx_power = snr;
    settings.reward_cap = cap;
    return Environmentd(std::move(channel), array_response<double>(kBs, aod), settings);
}

}  // namespace

TEST_CASE("oracle finds the aligned single path") {
    for (const Strategy aoa : {Strategy{kPi / 3, kPi / 3}, Strategy{4.0, -0.9}, Strategy{0.3, 0.05}}) {
        const auto env = bt::aligned_single_path(kBs, kUe, aoa, {2.0, 0.2}, 0.01);
        const int res = 64;
        const auto o = oracle_optimal(env, res);
        CHECK(o.value == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(o.value <= 1.0 + 1e-12);
        // Fine cell: a tenth of the coarse spacing in each coordinate.
        const double cell = std::hypot(0.1 * kTwoPi / res, 0.1 * kPi / res);
        double nearest = INFINITY;
        for (const auto& s : bt::response_equivalents(aoa)) nearest = std::min(nearest, distance(o.strategy, s));
        CHECK(nearest <= cell);
    }
}

TEST_CASE("oracle value does not drop when the grid is doubled") {
    Engine rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto env = random_environment(rng, 0.01);
        double prev = oracle_optimal(env, 8).value;
        for (int res = 16; res <= 512; res *= 2) {
            const double v = oracle_optimal(env, res).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("oracle dominates random probes") {
    Engine rng(32);
    const auto env = random_environment(rng, 0.01);
    const auto o = oracle_optimal(env, 256);
    for (int i = 0; i < 20000; ++i) CHECK(expected_cost(env, bt::random_strategy(rng)) <= o.value + 1e-9);
}

TEST_CASE("oracle of a silent environment is zero") {
    Engine rng(33);
    const auto env = random_environment(rng, 0.0, 1.0);
    const auto o = oracle_optimal(env, 16);
    CHECK(o.value == 0.0);
    CHECK(o.strategy.in_domain());
}

TEST_CASE("oracle resolution below two is rejected") {
    Engine rng(34);
    const auto env = random_environment(rng, 0.01);
    CHECK_THROWS_AS(oracle_optimal(env, 1), InputDomainError);
    CHECK_THROWS_AS(oracle_optimal(env, 8, 1), InputDomainError);
}

TEST_CASE("regret of optimal play is zero") {
    const std::vector<double> costs(100, 0.42);
    for (double r : cumulative_regret(0.42, costs)) CHECK(r == 0.0);
}

TEST_CASE("constant gap accumulates linearly") {
    const std::vector<double> costs(1000, 0.25);
    const auto r = cumulative_regret(0.75, costs);
    for (std::size_t t = 1; t <= r.size(); ++t) CHECK(r[t - 1] == doctest::Approx(0.5 * double(t)));
}

TEST_CASE("per-step oracle series") {
    const std::vector<double> oracle{1.0, 1.0, 0.5, 0.5};
    const std::vector<double> costs{0.5, 1.0, 0.25, 0.5};
    const auto r = cumulative_regret(oracle, costs);
    CHECK(r == std::vector<double>{0.5, 0.5, 0.75, 0.75});
    const std::vector<double> short_costs{0.1};
    CHECK_THROWS_AS(cumulative_regret(oracle, short_costs), ContractViolation);
}

TEST_CASE("exponent fit recovers exact power laws") {
    std::vector<double> r075(100000), r1(100000);
    for (std::size_t i = 0; i < r075.size(); ++i) {
        const double t = double(i + 1);
        r075[i] = std::pow(t, 0.75);
        r1[i] = t;
    }
    CHECK(std::abs(regret_exponent_fit(r075, 1000, 100000) - 0.75) <= 1e-6);
    CHECK(std::abs(regret_exponent_fit(r1, 1000, 100000) - 1.0) <= 1e-6);
}

TEST_CASE("exponent fit skips nonpositive points") {
    std::vector<double> r(200);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = i % 3 == 0 ? 0.0 : std::pow(double(i + 1), 0.5);
    CHECK(std::abs(regret_exponent_fit(r, 1, 200) - 0.5) <= 1e-9);
    const std::vector<double> zeros(50, 0.0);
    CHECK_THROWS_AS(regret_exponent_fit(zeros, 1, 50), InputDomainError);
    CHECK_THROWS_AS(regret_exponent_fit(r, 10, 500), InputDomainError);
    CHECK_THROWS_AS(regret_exponent_fit(r, 20, 10), InputDomainError);
}

TEST_CASE("coincident strategies contribute ratio zero") {
    Engine rng(35);
    const auto env = random_environment(rng, 0.01);
    CHECK(holder_ratio(env, {1.0, 0.2}, {1.0, 0.2}, 1.0, true) == 0.0);
}

TEST_CASE("power scaling leaves normalized ratios alone") {
    Engine rng(36);
    const auto env = random_environment(rng, 0.01);
    const double c = 7.5;
    const auto scaled = env.with_tx_power(env.tx_power() * c, true);
    for (int i = 0; i < 200; ++i) {
        const auto a = bt::random_strategy(rng);
        const Strategy b{a.azimuth, std::clamp(a.elevation + 0.03, -kHalfPi, kHalfPi)};
        const double n0 = holder_ratio(env, a, b, 1.0, true);
        const double n1 = holder_ratio(scaled, a, b, 1.0, true);
        const double u0 = holder_ratio(env, a, b, 1.0, false);
        const double u1 = holder_ratio(scaled, a, b, 1.0, false);
        CHECK(std::abs(n1 - n0) <= 1e-12 * std::max(1.0, n0));
        CHECK(std::abs(u1 - c * u0) <= 1e-12 * std::max(1.0, c * u0));
    }
}

TEST_CASE("probe pairs respect delta and the default scenario stays within L_H") {
    const ScenarioConfig cfg;
    const auto env = build_environment(cfg);
    Engine rng = make_stream(cfg.seed, Stream::probe);
    const auto report = holder_probe(env.at(1), 100000, 0.05, cfg.holder, rng);
    CHECK(report.pairs == 100000);
    CHECK(report.ratios.size() == 100000);
    CHECK(report.max_ratio <= cfg.holder.l_h);
    CHECK(report.max_ratio >= report.p99_ratio);
    CHECK(report.p99_ratio >= report.median_ratio);
    CHECK(report.empirical_exponent > 0.5);
    Engine again = make_stream(cfg.seed, Stream::probe);
    CHECK(holder_probe(env.at(1), 1000, 0.05, cfg.holder, again).ratios ==
          std::vector<double>(report.ratios.begin(), report.ratios.begin() + 1000));
    CHECK_THROWS_AS(holder_probe(env.at(1), 10, 0.0, cfg.holder, rng), InputDomainError);
}
