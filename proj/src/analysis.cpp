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

#include "beamlearn/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace beamlearn {

namespace {

struct Candidate {
    double azimuth;
    double elevation;
    double value;
};

double wrap_azimuth(double az) {
    if (az < 0.0) return az + kTwoPi;
    if (az > kTwoPi) return az - kTwoPi;
    return az;
}

}  // namespace

OracleResult oracle_optimal(const Environmentd& env, int azimuth_resolution, int elevation_resolution) {
    detail::require(azimuth_resolution >= 2 && elevation_resolution >= 2,
                    "oracle_optimal: resolution must be >= 2");
    CostSurface<double> cost(env);

    const double az_step = kTwoPi / azimuth_resolution;
    const double el_step = kPi / elevation_resolution;
    Candidate best{0.0, -kHalfPi, -1.0};
    for (int i = 0; i <= azimuth_resolution; ++i) {
        const double az = az_step * i;
        for (int k = 0; k <= elevation_resolution; ++k) {
            const double el = -kHalfPi + el_step * k;
            const double v = cost(az, el);
            if (v > best.value) best = {az, el, v};
        }
    }

    const Candidate coarse = best;
    for (int i = -10; i <= 10; ++i) {
        const double az = wrap_azimuth(coarse.azimuth + 0.1 * az_step * i);
        for (int k = -10; k <= 10; ++k) {
            const double el = coarse.elevation + 0.1 * el_step * k;
            if (el < -kHalfPi || el > kHalfPi) continue;
            const double v = cost(az, el);
            if (v > best.value) best = {az, el, v};
        }
    }

    // Compass search from the refined point. The surface has long curved
    // ridges near the edge of the visible region, which a fixed lattice
    // does not follow.
    double ha = 0.1 * az_step, he = 0.1 * el_step;
    for (int iter = 0; iter < 100000 && ha > 1e-13; ++iter) {
        bool moved = false;
        for (int i = -1; i <= 1; ++i) {
            for (int k = -1; k <= 1; ++k) {
                if (i == 0 && k == 0) continue;
                const double az = wrap_azimuth(best.azimuth + ha * i);
                const double el = best.elevation + he * k;
                if (el < -kHalfPi || el > kHalfPi) continue;
                const double v = cost(az, el);
                if (v > best.value) {
                    best = {az, el, v};
                    moved = true;
                }
            }
        }
        if (!moved) {
            ha *= 0.5;
            he *= 0.5;
        }
    }
    return {{best.azimuth, best.elevation}, best.value};
}

OracleResult oracle_optimal(const Environmentd& env, int coarse_resolution) {
    return oracle_optimal(env, coarse_resolution, coarse_resolution);
}

std::vector<double> cumulative_regret(std::span<const double> oracle_values,
                                      std::span<const double> expected_costs) {
    detail::ensure(oracle_values.size() == expected_costs.size(),
                   "cumulative_regret: oracle and cost series differ in length");
    std::vector<double> regret(expected_costs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < expected_costs.size(); ++i) {
        running += oracle_values[i] - expected_costs[i];
        regret[i] = running;
    }
    return regret;
}

std::vector<double> cumulative_regret(double oracle_value, std::span<const double> expected_costs) {
    const std::vector<double> oracle(expected_costs.size(), oracle_value);
    return cumulative_regret(oracle, expected_costs);
}

double regret_exponent_fit(std::span<const double> regret, std::int64_t t_first, std::int64_t t_last) {
    detail::require(t_first >= 1 && t_first <= t_last, "regret_exponent_fit: empty fit range");
    detail::require(t_last <= static_cast<std::int64_t>(regret.size()),
                    "regret_exponent_fit: fit range exceeds the series");

    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::int64_t t = t_first; t <= t_last; ++t) {
        const double r = regret[static_cast<std::size_t>(t - 1)];
        if (!(r > 0.0)) continue;
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(r);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    detail::require(n >= 2, "regret_exponent_fit: fewer than two positive points in range");
    const double denom = n * sxx - sx * sx;
    detail::require(denom > 0.0, "regret_exponent_fit: degenerate fit range");
    return (n * sxy - sx * sy) / denom;
}

double holder_ratio(const Environmentd& env, const Strategy& a, const Strategy& b, double alpha_h,
                    bool normalized) {
    const double d = distance(a, b);
    if (d == 0.0) return 0.0;
    const double scale = normalized ? 1.0 : env.reward_cap();
    const double diff = std::abs(expected_cost(env, a) - expected_cost(env, b)) * scale;
    return diff / std::pow(d, alpha_h);
}

HolderProbeReport holder_probe(const Environmentd& env, std::size_t num_pairs, double delta,
                               const HolderParams& holder, Engine& rng) {
    detail::require(std::isfinite(delta) && delta > 0.0, "holder_probe: delta must be positive");
    holder.validate();

    CostSurface<double> cost(env);
    std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
    std::uniform_real_distribution<double> elevation(-kHalfPi, kHalfPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    constexpr int kBins = 6;
    std::array<double, kBins> bin_max{};

    HolderProbeReport report;
    report.delta = delta;
    report.alpha_h = holder.alpha_h;
    report.ratios.reserve(num_pairs);

    for (std::size_t p = 0; p < num_pairs; ++p) {
        Strategy s, t;
        double r = 0.0;
        do {
            s = {azimuth(rng), elevation(rng)};
            r = delta * std::sqrt(unit(rng));
            const double heading = kTwoPi * unit(rng);
            t = {s.azimuth + r * std::cos(heading), s.elevation + r * std::sin(heading)};
        } while (!t.in_domain());

        double ratio = 0.0;
        if (r > 0.0) {
            const double diff = std::abs(cost(s) - cost(t));
            ratio = diff / std::pow(r, holder.alpha_h);
            const int bin = static_cast<int>(std::floor(std::log2(delta / r)));
            if (bin >= 0 && bin < kBins) bin_max[bin] = std::max(bin_max[bin], diff);
        }
        report.ratios.push_back(ratio);
    }

    report.pairs = report.ratios.size();
    if (!report.ratios.empty()) {
        std::vector<double> sorted = report.ratios;
        std::sort(sorted.begin(), sorted.end());
        report.max_ratio = sorted.back();
        report.mean_ratio = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
        report.median_ratio = sorted[sorted.size() / 2];
        report.p99_ratio = sorted[std::min(sorted.size() - 1, sorted.size() * 99 / 100)];
    }

    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int b = 0; b < kBins; ++b) {
        if (!(bin_max[b] > 0.0)) continue;
        const double x = std::log(delta) - (b + 0.5) * std::log(2.0);
        const double y = std::log(bin_max[b]);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (n >= 2) report.empirical_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return report;
}

}  // namespace beamlearn
