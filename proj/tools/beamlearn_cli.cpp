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

// beamlearn command line: run / sweep / oracle / probe-holder / report.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime contract violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamlearn/scenario.hpp"

namespace bl = beamlearn;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitContract = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> algorithm;
    std::optional<std::int64_t> horizon;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Scenario file (key = value lines)");
    cmd->add_option("--seed", opts.seed, "Scenario seed (u64)");
    cmd->add_option("--algorithm", opts.algorithm, "blb | drifting-blb | ucb1-grid | eps-greedy-grid");
    cmd->add_option("--horizon", opts.horizon, "Number of steps n");
    cmd->add_option("--set", opts.overrides, "Field override key=value (repeatable)");
}

bl::ScenarioConfig resolve(const CommonOptions& opts) {
    bl::ScenarioConfig cfg;
    if (!opts.config_path.empty()) cfg = bl::load_config(opts.config_path);
    for (const auto& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw bl::ConfigError("--set expects key=value, got '" + kv + "'");
        bl::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.algorithm) cfg.algorithm = bl::parse_algorithm(*opts.algorithm);
    if (opts.horizon) cfg.horizon = *opts.horizon;
    cfg.validate();
    return cfg;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) {
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw bl::ConfigError("--seeds: bad seed '" + cell + "'");
        }
    }
    if (seeds.empty()) throw bl::ConfigError("--seeds: empty list");
    return seeds;
}

void print_summary(const bl::RunSummary& s) {
    std::printf("%-16s seed=%-6llu avg_reward=%.6f avg_cost=%.6f oracle=%.6f regret=%.3f\n",
                std::string(bl::to_string(s.algorithm)).c_str(), static_cast<unsigned long long>(s.seed),
                s.final_average_reward, s.final_average_expected_cost, s.mean_oracle_value, s.final_regret);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind mmWave beam-direction learning with continuum-armed bandits"};
    app.require_subcommand(1);

    CommonOptions run_opts, sweep_opts, oracle_opts, probe_opts;
    std::string run_out = "out";
    std::string sweep_out = "out";
    std::string seed_list;
    int num_seeds = 0;
    std::size_t pairs = 100000;
    double delta = 0.05;
    std::vector<std::string> report_files;

    auto* run = app.add_subcommand("run", "Run one scenario, write trace.csv and summary.json");
    add_common(run, run_opts);
    run->add_option("--out", run_out, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Run a scenario over several seeds");
    add_common(sweep, sweep_opts);
    sweep->add_option("--out", sweep_out, "Output directory");
    sweep->add_option("--seeds", seed_list, "Comma-separated seed list");
    sweep->add_option("--num-seeds", num_seeds, "Use seeds seed, seed+1, ..., seed+N-1");

    auto* oracle = app.add_subcommand("oracle", "Print the optimal direction and its cost");
    add_common(oracle, oracle_opts);

    auto* probe = app.add_subcommand("probe-holder", "Empirical Hoelder constant of the cost surface");
    add_common(probe, probe_opts);
    probe->add_option("--pairs", pairs, "Number of strategy pairs");
    probe->add_option("--delta", delta, "Pair distance bound in radians");

    auto* report = app.add_subcommand("report", "Summarize trace CSV files");
    report->add_option("files", report_files, "trace.csv files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            const auto cfg = resolve(run_opts);
            const auto result = bl::run_experiment(cfg, run_out);
            print_summary(result.summary);
        } else if (*sweep) {
            const auto cfg = resolve(sweep_opts);
            std::vector<std::uint64_t> seeds;
            if (!seed_list.empty()) {
                seeds = parse_seed_list(seed_list);
            } else {
                if (num_seeds < 1) throw bl::ConfigError("sweep: give --seeds or --num-seeds >= 1");
                for (int i = 0; i < num_seeds; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
            }
            const auto rep = bl::sweep(cfg, seeds);
            std::filesystem::create_directories(sweep_out);
            bl::write_sweep_csv(rep, std::filesystem::path(sweep_out) / "sweep.csv");
            for (const auto& s : rep.runs) print_summary(s);
            std::printf("mean final average reward %.6f (std %.6f), mean final regret %.3f\n",
                        rep.mean_final_average_reward(), rep.std_final_average_reward(),
                        rep.mean_final_regret());
        } else if (*oracle) {
            const auto cfg = resolve(oracle_opts);
            const auto env = bl::build_environment(cfg);
            const auto oracles = bl::segment_oracles(env, cfg.oracle_resolution);
            for (std::size_t i = 0; i < oracles.size(); ++i) {
                const auto& o = oracles[i];
                std::printf("segment_start=%lld azimuth=%.9f elevation=%.9f cost=%.9f snr=%.9f\n",
                            static_cast<long long>(env.segment_starts()[i]), o.strategy.azimuth,
                            o.strategy.elevation, o.value, o.value * env.segments()[i].reward_cap());
            }
        } else if (*probe) {
            const auto cfg = resolve(probe_opts);
            const auto env = bl::build_environment(cfg);
            bl::Engine rng = bl::make_stream(cfg.seed, bl::Stream::probe);
            const auto r = bl::holder_probe(env.at(1), pairs, delta, cfg.holder, rng);
            std::printf("pairs=%zu delta=%.6g alpha_h=%.6g\n", r.pairs, r.delta, r.alpha_h);
            std::printf("max_ratio=%.6f (L_H=%.6g, %s)\n", r.max_ratio, cfg.holder.l_h,
                        r.max_ratio <= cfg.holder.l_h ? "within" : "exceeds");
            std::printf("mean_ratio=%.6f median_ratio=%.6f p99_ratio=%.6f empirical_exponent=%.4f\n",
                        r.mean_ratio, r.median_ratio, r.p99_ratio, r.empirical_exponent);
        } else if (*report) {
            std::vector<bl::TraceFileSummary> rows;
            for (const auto& f : report_files) rows.push_back(bl::summarize_trace_csv(f));
            std::cout << bl::format_report(rows);
        }
    } catch (const bl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bl::SweepError& e) {
        std::cerr << "sweep failed: " << e.what() << '\n';
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitContract;
    }
    return 0;
}
