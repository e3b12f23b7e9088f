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

#include <cerrno>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "beamlearn/scenario.hpp"

namespace beamlearn {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view value) {
    const std::string text(value);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ConfigError("config: '" + std::string(key) + "' expects a real number, got '" + text + "'");
    }
    return v;
}

std::int64_t parse_integer(std::string_view key, std::string_view value) {
    const std::string text(value);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
        throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
    const std::string text(value);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || text.front() == '-' || end != text.c_str() + text.size() || errno == ERANGE) {
        throw ConfigError("config: '" + std::string(key) + "' expects an unsigned integer, got '" + text + "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view value) {
    const auto v = parse_integer(key, value);
    if (v < INT32_MIN || v > INT32_MAX) throw ConfigError("config: '" + std::string(key) + "' out of range");
    return static_cast<int>(v);
}

bool apply_array_key(PlanarArrayConfig& cfg, std::string_view field, std::string_view key,
                     std::string_view value) {
    if (field == "y_count") cfg.y_count = parse_int(key, value);
    else if (field == "z_count") cfg.z_count = parse_int(key, value);
    else if (field == "spacing_ratio") cfg.spacing_ratio = parse_real(key, value);
    else return false;
    return true;
}

std::string real_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::blb: return "blb";
        case Algorithm::drifting_blb: return "drifting-blb";
        case Algorithm::ucb1_grid: return "ucb1-grid";
        case Algorithm::eps_greedy_grid: return "eps-greedy-grid";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view tag) {
    if (tag == "blb") return Algorithm::blb;
    if (tag == "drifting-blb") return Algorithm::drifting_blb;
    if (tag == "ucb1-grid") return Algorithm::ucb1_grid;
    if (tag == "eps-greedy-grid") return Algorithm::eps_greedy_grid;
    throw ConfigError("unknown algorithm tag '" + std::string(tag) +
                      "' (expected blb, drifting-blb, ucb1-grid or eps-greedy-grid)");
}

void ScenarioConfig::validate() const {
    try {
        bs_config.validate();
        ue_config.validate();
        holder.validate();
        first_path_aoa.validate();
    } catch (const InputDomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    auto check = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("config: ") + what);
    };
    check(num_paths >= 1, "num_paths must be >= 1");
    check(std::isfinite(mean_path_power) && mean_path_power > 0, "mean_path_power must be positive");
    check(std::isfinite(snr_db), "snr_db must be finite");
    check(horizon >= 1, "horizon must be >= 1");
    check(grid_resolution >= 1, "grid_resolution must be >= 1");
    check(epsilon0 > 0 && epsilon0 < 1, "epsilon0 must lie in (0, 1)");
    check(window >= 2 && window % 2 == 0, "window must be even and >= 2");
    check(samples_per_dwell >= 1, "samples_per_dwell must be >= 1");
    check(change_period >= 0, "change_period must be >= 0");
    check(oracle_resolution >= 2, "oracle_resolution must be >= 2");
    check(std::isfinite(reward_cap) && reward_cap >= 0, "reward_cap must be >= 0 (0 = default)");
    if (change_schedule) {
        try {
            change_schedule->validate(horizon);
        } catch (const InputDomainError& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
}

void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key.starts_with("bs_config.")) {
        if (apply_array_key(cfg.bs_config, key.substr(10), key, value)) return;
    } else if (key.starts_with("ue_config.")) {
        if (apply_array_key(cfg.ue_config, key.substr(10), key, value)) return;
    } else if (key == "num_paths") {
        cfg.num_paths = parse_int(key, value);
        return;
    } else if (key == "mean_path_power") {
        cfg.mean_path_power = parse_real(key, value);
        return;
    } else if (key == "snr_db") {
        cfg.snr_db = parse_real(key, value);
        return;
    } else if (key == "first_path_aoa.azimuth") {
        cfg.first_path_aoa.azimuth = parse_real(key, value);
        return;
    } else if (key == "first_path_aoa.elevation") {
        cfg.first_path_aoa.elevation = parse_real(key, value);
        return;
    } else if (key == "holder.l_h") {
        cfg.holder.l_h = parse_real(key, value);
        return;
    } else if (key == "holder.alpha_h") {
        cfg.holder.alpha_h = parse_real(key, value);
        return;
    } else if (key == "horizon") {
        cfg.horizon = parse_integer(key, value);
        return;
    } else if (key == "algorithm") {
        cfg.algorithm = parse_algorithm(value);
        return;
    } else if (key == "grid_resolution") {
        cfg.grid_resolution = parse_int(key, value);
        return;
    } else if (key == "epsilon0") {
        cfg.epsilon0 = parse_real(key, value);
        return;
    } else if (key == "window") {
        cfg.window = parse_int(key, value);
        return;
    } else if (key == "seed") {
        cfg.seed = parse_unsigned(key, value);
        return;
    } else if (key == "samples_per_dwell") {
        cfg.samples_per_dwell = parse_int(key, value);
        return;
    } else if (key == "change_period") {
        cfg.change_period = parse_integer(key, value);
        return;
    } else if (key == "reward_cap") {
        cfg.reward_cap = parse_real(key, value);
        return;
    } else if (key == "oracle_resolution") {
        cfg.oracle_resolution = parse_int(key, value);
        return;
    }
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig cfg) {
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string to_config_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    auto array = [&](const char* name, const PlanarArrayConfig& a) {
        out << name << ".y_count = " << a.y_count << '\n'
            << name << ".z_count = " << a.z_count << '\n'
            << name << ".spacing_ratio = " << real_text(a.spacing_ratio) << '\n';
    };
    array("bs_config", cfg.bs_config);
    array("ue_config", cfg.ue_config);
    out << "num_paths = " << cfg.num_paths << '\n'
        << "mean_path_power = " << real_text(cfg.mean_path_power) << '\n'
        << "snr_db = " << real_text(cfg.snr_db) << '\n'
        << "first_path_aoa.azimuth = " << real_text(cfg.first_path_aoa.azimuth) << '\n'
        << "first_path_aoa.elevation = " << real_text(cfg.first_path_aoa.elevation) << '\n'
        << "holder.l_h = " << real_text(cfg.holder.l_h) << '\n'
        << "holder.alpha_h = " << real_text(cfg.holder.alpha_h) << '\n'
        << "horizon = " << cfg.horizon << '\n'
        << "algorithm = " << to_string(cfg.algorithm) << '\n'
        << "grid_resolution = " << cfg.grid_resolution << '\n'
        << "epsilon0 = " << real_text(cfg.epsilon0) << '\n'
        << "window = " << cfg.window << '\n'
        << "seed = " << cfg.seed << '\n'
        << "samples_per_dwell = " << cfg.samples_per_dwell << '\n'
        << "change_period = " << cfg.change_period << '\n'
        << "oracle_resolution = " << cfg.oracle_resolution << '\n'
        << "reward_cap = " << real_text(cfg.reward_cap) << '\n';
    return out.str();
}

}  // namespace beamlearn
