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

#ifndef BEAMLEARN_SCENARIO_HPP
#define BEAMLEARN_SCENARIO_HPP

// Experiment runner: scenario configuration, environment construction,
// algorithm dispatch, regret annotation, multi-seed sweeps and file output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamlearn/analysis.hpp"
#include "beamlearn/blb.hpp"
#include "beamlearn/nonstationary.hpp"
#include "beamlearn/trace.hpp"

namespace beamlearn {

enum class Algorithm { blb, drifting_blb, ucb1_grid, eps_greedy_grid };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view tag);

struct ScenarioConfig {
    PlanarArrayConfig bs_config{8, 8, 0.5};
    PlanarArrayConfig ue_config{4, 4, 0.5};
    int num_paths = 5;
    double mean_path_power = 1.0;
    double snr_db = -20.0;  // 10 log10(P / sigma^2), sigma^2 = 1
    Strategy first_path_aoa{kPi / 3.0, kPi / 3.0};
    HolderParams holder{4.0, 1.0};
    std::int64_t horizon = 20000;
    Algorithm algorithm = Algorithm::blb;
    int grid_resolution = 10;
    double epsilon0 = 0.9;
    int window = 250;
    std::uint64_t seed = 1;
    int samples_per_dwell = 10;
    // Explicit schedule; takes precedence over change_period.
    std::optional<ChangeSchedule> change_schedule;
    // Redraw the first path's arrival elevation every `change_period` steps
    // (0 disables).
    std::int64_t change_period = 0;
    int oracle_resolution = 512;  // azimuth intervals; elevation uses half
    // Reward normalization; 0 selects (P / sigma^2) N_BS N_UE mean_path_power.
    double reward_cap = 0.0;

    void validate() const;
};

/// Parses flat `key = value` text; '#' starts a comment.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});
void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value);
std::string to_config_text(const ScenarioConfig& cfg);

/// Channel, precoder and change schedule drawn from the scenario seed.
ScheduledEnvironment build_environment(const ScenarioConfig& cfg);

/// Per-segment oracle of a (possibly piecewise) environment.
std::vector<OracleResult> segment_oracles(const ScheduledEnvironment& env, int oracle_resolution);

/// Fills expected_cost, expected_snr and cumulative_regret of every step.
void annotate_trace(RegretTrace& trace, const ScheduledEnvironment& env,
                    const std::vector<OracleResult>& oracles);

struct RunSummary {
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::blb;
    int grid_resolution = 0;
    std::int64_t horizon = 0;
    Strategy oracle_strategy;
    double oracle_value = 0.0;       // first segment
    double mean_oracle_value = 0.0;  // step-weighted over segments
    double final_average_reward = 0.0;
    double final_average_expected_cost = 0.0;
    double final_regret = 0.0;
};

struct ExperimentResult {
    ScenarioConfig config;
    RegretTrace trace;
    std::vector<OracleResult> oracles;  // one per environment segment
    std::vector<std::int64_t> segment_starts;
    RunSummary summary;
};

ExperimentResult run_experiment(const ScenarioConfig& cfg);

/// run_experiment plus trace.csv and summary.json under `out_dir`.
ExperimentResult run_experiment(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

void write_trace_csv(const RegretTrace& trace, std::ostream& out);
void write_trace_csv(const RegretTrace& trace, const std::filesystem::path& path);
std::string summary_json(const ExperimentResult& result);

struct SweepReport {
    std::vector<RunSummary> runs;  // in seed-list order
    // Per-step statistics across seeds.
    std::vector<double> mean_average_reward;
    std::vector<double> std_average_reward;
    std::vector<double> mean_regret;
    std::vector<double> std_regret;

    double mean_final_average_reward() const;
    double std_final_average_reward() const;
    double mean_final_regret() const;
};

/// One run per seed (workers run concurrently), aggregated in seed-list
/// order. A failing seed aborts the sweep with a SweepError naming it.
SweepReport sweep(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds);

class SweepError : public std::runtime_error {
public:
    SweepError(std::uint64_t seed, const std::string& what);
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

void write_sweep_csv(const SweepReport& report, const std::filesystem::path& path);

struct TraceFileSummary {
    std::string file;
    std::int64_t steps = 0;
    double final_average_reward = 0.0;
    double final_average_expected_cost = 0.0;
    double final_regret = 0.0;
};

/// Reads trace CSVs written by write_trace_csv.
TraceFileSummary summarize_trace_csv(const std::filesystem::path& path);
std::string format_report(const std::vector<TraceFileSummary>& rows);

}  // namespace beamlearn

#endif  // BEAMLEARN_SCENARIO_HPP
