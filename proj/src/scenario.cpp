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

#include "beamlearn/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace beamlearn {

namespace {

/// Reward oracle seen by a learner: the environment in force at step t,
/// measured with the run's symbol and noise streams.
struct MeasuredReward {
    const ScheduledEnvironment& env;
    Engine& symbols;
    Engine& noise;

    double operator()(const Strategy& s, std::int64_t t) const {
        return measure_reward(env.at(t), s, symbols, noise);
    }
};

std::vector<PathComponentd> draw_paths(const ScenarioConfig& cfg, Engine& rng) {
    std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
    std::uniform_real_distribution<double> elevation(-kHalfPi, kHalfPi);
    std::vector<PathComponentd> paths;
    paths.reserve(static_cast<std::size_t>(cfg.num_paths));
    for (int l = 0; l < cfg.num_paths; ++l) {
        PathComponentd p;
        p.gain = rayleigh_gain<double>(rng, cfg.mean_path_power);
        p.aod_azimuth = azimuth(rng);
        p.aod_elevation = elevation(rng);
        p.aoa_azimuth = azimuth(rng);
        p.aoa_elevation = elevation(rng);
        paths.push_back(p);
    }
    paths.front().aoa_azimuth = cfg.first_path_aoa.azimuth;
    paths.front().aoa_elevation = cfg.first_path_aoa.elevation;
    return paths;
}

ChangeSchedule periodic_elevation_schedule(const ScenarioConfig& cfg,
                                           const std::vector<PathComponentd>& initial) {
    ChangeSchedule schedule;
    if (cfg.change_period <= 0) return schedule;
    Engine rng = make_stream(cfg.seed, Stream::drift);
    std::uniform_real_distribution<double> elevation(-kHalfPi, kHalfPi);
    auto paths = initial;
    for (std::int64_t step = cfg.change_period; step <= cfg.horizon; step += cfg.change_period) {
        paths.front().aoa_elevation = elevation(rng);
        schedule.events.push_back({step, paths});
    }
    return schedule;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

ScheduledEnvironment build_environment(const ScenarioConfig& cfg) {
    cfg.validate();
    Engine channel_rng = make_stream(cfg.seed, Stream::channel);
    auto paths = draw_paths(cfg, channel_rng);

    auto precoder = array_response<double>(cfg.bs_config, paths.front().departure());
    auto channel = synthesize_channel<double>(cfg.bs_config, cfg.ue_config, paths);

    Environmentd::Settings settings;
    settings.tx_power = std::pow(10.0, cfg.snr_db / 10.0);
    settings.noise_power = 1.0;
    settings.samples_per_dwell = cfg.samples_per_dwell;
    settings.mean_path_power = cfg.mean_path_power;
    if (cfg.reward_cap > 0) settings.reward_cap = cfg.reward_cap;
    Environmentd base(std::move(channel), std::move(precoder), settings);

    ChangeSchedule schedule =
        cfg.change_schedule ? *cfg.change_schedule : periodic_elevation_schedule(cfg, paths);
    return ScheduledEnvironment(std::move(base), std::move(schedule));
}

std::vector<OracleResult> segment_oracles(const ScheduledEnvironment& env, int oracle_resolution) {
    std::vector<OracleResult> oracles;
    oracles.reserve(env.segments().size());
    for (const auto& segment : env.segments()) {
        oracles.push_back(oracle_optimal(segment, oracle_resolution, std::max(2, oracle_resolution / 2)));
    }
    return oracles;
}

void annotate_trace(RegretTrace& trace, const ScheduledEnvironment& env,
                    const std::vector<OracleResult>& oracles) {
    detail::ensure(oracles.size() == env.segments().size(),
                   "annotate_trace: one oracle per environment segment required");
    std::vector<CostSurface<double>> surfaces;
    surfaces.reserve(env.segments().size());
    for (const auto& segment : env.segments()) surfaces.emplace_back(segment);

    std::vector<double> oracle_values(trace.steps.size());
    std::vector<double> costs(trace.steps.size());
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        auto& rec = trace.steps[i];
        const std::size_t seg = env.segment_of(rec.step);
        rec.expected_cost = surfaces[seg](rec.strategy);
        rec.expected_snr = rec.expected_cost * env.segments()[seg].reward_cap();
        oracle_values[i] = oracles[seg].value;
        costs[i] = rec.expected_cost;
    }
    const auto regret = cumulative_regret(oracle_values, costs);
    double reward_sum = 0.0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        trace.steps[i].cumulative_regret = regret[i];
        reward_sum += trace.steps[i].reward;
    }
    trace.oracle_value = oracles.back().value;
    trace.final_average_reward = trace.steps.empty() ? 0.0 : reward_sum / trace.steps.size();
}

ExperimentResult run_experiment(const ScenarioConfig& cfg) {
    cfg.validate();
    const ScheduledEnvironment env = build_environment(cfg);
    Engine symbols = make_stream(cfg.seed, Stream::symbols);
    Engine noise = make_stream(cfg.seed, Stream::noise);
    Engine exploration = make_stream(cfg.seed, Stream::exploration);
    MeasuredReward source{env, symbols, noise};

    ExperimentResult result;
    result.config = cfg;
    switch (cfg.algorithm) {
        case Algorithm::blb:
            result.trace = run_blb(source, cfg.horizon, cfg.holder);
            break;
        case Algorithm::drifting_blb:
            result.trace = run_drifting_blb(source, cfg.horizon, DriftConfig{cfg.window, cfg.holder});
            break;
        case Algorithm::ucb1_grid:
            result.trace = run_ucb1_grid(source, cfg.horizon, cfg.grid_resolution);
            break;
        case Algorithm::eps_greedy_grid:
            result.trace = run_epsilon_greedy_grid(source, cfg.horizon, cfg.grid_resolution,
                                                   cfg.epsilon0, exploration);
            break;
    }

    result.oracles = segment_oracles(env, cfg.oracle_resolution);
    result.segment_starts = env.segment_starts();
    annotate_trace(result.trace, env, result.oracles);

    auto& s = result.summary;
    s.seed = cfg.seed;
    s.algorithm = cfg.algorithm;
    s.grid_resolution = cfg.algorithm == Algorithm::ucb1_grid || cfg.algorithm == Algorithm::eps_greedy_grid
                            ? cfg.grid_resolution
                            : 0;
    s.horizon = cfg.horizon;
    s.oracle_strategy = result.oracles.front().strategy;
    s.oracle_value = result.oracles.front().value;
    double oracle_sum = 0.0, cost_sum = 0.0;
    for (const auto& rec : result.trace.steps) {
        oracle_sum += result.oracles[env.segment_of(rec.step)].value;
        cost_sum += rec.expected_cost;
    }
    const double n = static_cast<double>(result.trace.steps.size());
    s.mean_oracle_value = oracle_sum / n;
    s.final_average_reward = result.trace.final_average_reward;
    s.final_average_expected_cost = cost_sum / n;
    s.final_regret = result.trace.steps.back().cumulative_regret;
    return result;
}

ExperimentResult run_experiment(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    ExperimentResult result = run_experiment(cfg);
    std::filesystem::create_directories(out_dir);
    write_trace_csv(result.trace, out_dir / "trace.csv");
    std::ofstream summary(out_dir / "summary.json");
    summary << summary_json(result) << '\n';
    if (!summary) throw std::runtime_error("failed to write summary.json in " + out_dir.string());
    return result;
}

void write_trace_csv(const RegretTrace& trace, std::ostream& out) {
    out << "step,round,m,azimuth_rad,elevation_rad,reward,expected_cost,cum_regret,expected_snr\n";
    for (const auto& r : trace.steps) {
        out << r.step << ',' << r.round << ',' << r.m << ',' << fmt12(r.strategy.azimuth) << ','
            << fmt12(r.strategy.elevation) << ',' << fmt12(r.reward) << ',' << fmt12(r.expected_cost)
            << ',' << fmt12(r.cumulative_regret) << ',' << fmt12(r.expected_snr) << '\n';
    }
}

void write_trace_csv(const RegretTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_trace_csv(trace, out);
}

std::string summary_json(const ExperimentResult& result) {
    using nlohmann::json;
    const auto& s = result.summary;
    json j;
    j["algorithm"] = std::string(to_string(s.algorithm));
    j["seed"] = s.seed;
    j["horizon"] = s.horizon;
    if (s.grid_resolution > 0) j["grid_resolution"] = s.grid_resolution;
    j["final_average_reward"] = s.final_average_reward;
    j["final_average_expected_cost"] = s.final_average_expected_cost;
    j["final_cumulative_regret"] = s.final_regret;
    j["mean_oracle_value"] = s.mean_oracle_value;
    json oracles = json::array();
    for (std::size_t i = 0; i < result.oracles.size(); ++i) {
        const auto& o = result.oracles[i];
        oracles.push_back({{"segment_start", result.segment_starts[i]},
                           {"azimuth_rad", o.strategy.azimuth},
                           {"elevation_rad", o.strategy.elevation},
                           {"value", o.value}});
    }
    j["oracles"] = oracles;
    json rounds = json::array();
    for (const auto& r : result.trace.rounds) {
        rounds.push_back({{"round", r.round_index},
                          {"t_start", r.t_start},
                          {"t_end", r.t_end},
                          {"m", r.m},
                          {"covering_radius", r.covering_radius}});
    }
    j["rounds"] = rounds;
    return j.dump(2);
}

SweepError::SweepError(std::uint64_t seed, const std::string& what)
    : std::runtime_error("seed " + std::to_string(seed) + ": " + what), seed_(seed) {}

double SweepReport::mean_final_average_reward() const {
    return mean_average_reward.empty() ? 0.0 : mean_average_reward.back();
}

double SweepReport::std_final_average_reward() const {
    return std_average_reward.empty() ? 0.0 : std_average_reward.back();
}

double SweepReport::mean_final_regret() const { return mean_regret.empty() ? 0.0 : mean_regret.back(); }

SweepReport sweep(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& seeds) {
    detail::require(!seeds.empty(), "sweep: seed list is empty");
    cfg.validate();
    const std::size_t runs = seeds.size();
    const auto steps = static_cast<std::size_t>(cfg.horizon);

    std::vector<RunSummary> summaries(runs);
    std::vector<std::vector<double>> average_reward(runs), regret(runs);
    std::vector<std::exception_ptr> failures(runs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                ScenarioConfig c = cfg;
                c.seed = seeds[i];
                const ExperimentResult r = run_experiment(c);
                summaries[i] = r.summary;
                average_reward[i].resize(steps);
                regret[i].resize(steps);
                double sum = 0.0;
                for (std::size_t t = 0; t < steps; ++t) {
                    sum += r.trace.steps[t].reward;
                    average_reward[i][t] = sum / static_cast<double>(t + 1);
                    regret[i][t] = r.trace.steps[t].cumulative_regret;
                }
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(runs, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < runs; ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const std::exception& e) {
            throw SweepError(seeds[i], e.what());
        }
    }

    SweepReport report;
    report.runs = std::move(summaries);
    auto moments = [&](const std::vector<std::vector<double>>& series, std::vector<double>& mean,
                       std::vector<double>& sd) {
        mean.assign(steps, 0.0);
        sd.assign(steps, 0.0);
        for (std::size_t t = 0; t < steps; ++t) {
            double m = 0.0;
            for (std::size_t i = 0; i < runs; ++i) m += series[i][t];
            m /= static_cast<double>(runs);
            double v = 0.0;
            for (std::size_t i = 0; i < runs; ++i) v += (series[i][t] - m) * (series[i][t] - m);
            mean[t] = m;
            sd[t] = runs > 1 ? std::sqrt(v / static_cast<double>(runs - 1)) : 0.0;
        }
    };
    moments(average_reward, report.mean_average_reward, report.std_average_reward);
    moments(regret, report.mean_regret, report.std_regret);
    return report;
}

void write_sweep_csv(const SweepReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "step,mean_average_reward,std_average_reward,mean_cum_regret,std_cum_regret\n";
    for (std::size_t t = 0; t < report.mean_average_reward.size(); ++t) {
        out << (t + 1) << ',' << fmt12(report.mean_average_reward[t]) << ','
            << fmt12(report.std_average_reward[t]) << ',' << fmt12(report.mean_regret[t]) << ','
            << fmt12(report.std_regret[t]) << '\n';
    }
}

TraceFileSummary summarize_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty trace file '" + path.string() + "'");

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
    }
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ConfigError(path.string() + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t reward_col = column("reward");
    const std::size_t cost_col = column("expected_cost");
    const std::size_t regret_col = column("cum_regret");

    TraceFileSummary s;
    s.file = path.string();
    double reward_sum = 0.0, cost_sum = 0.0;
    std::vector<std::string> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        cells.clear();
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != header.size()) {
            throw ConfigError(path.string() + ": malformed row " + std::to_string(s.steps + 2));
        }
        reward_sum += std::stod(cells[reward_col]);
        cost_sum += std::stod(cells[cost_col]);
        s.final_regret = std::stod(cells[regret_col]);
        ++s.steps;
    }
    if (s.steps > 0) {
        s.final_average_reward = reward_sum / static_cast<double>(s.steps);
        s.final_average_expected_cost = cost_sum / static_cast<double>(s.steps);
    }
    return s;
}

std::string format_report(const std::vector<TraceFileSummary>& rows) {
    std::ostringstream out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-40s %10s %14s %14s %14s\n", "file", "steps", "avg_reward",
                  "avg_exp_cost", "cum_regret");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-40s %10lld %14.6g %14.6g %14.6g\n", r.file.c_str(),
                      static_cast<long long>(r.steps), r.final_average_reward,
                      r.final_average_expected_cost, r.final_regret);
        out << buf;
    }
    return out.str();
}

}  // namespace beamlearn
