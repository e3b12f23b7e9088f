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

#ifndef BEAMLEARN_ARRAY_CHANNEL_HPP
#define BEAMLEARN_ARRAY_CHANNEL_HPP

// Uniform planar array responses, the ray-based narrowband channel and the
// SNR cost observed by a UE steering its receive beam.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beamlearn/errors.hpp"

namespace beamlearn {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Slack for angles produced by floating-point grid arithmetic.
inline constexpr double kAngleSlack = 1e-12;

struct PlanarArrayConfig {
    int y_count = 1;             // horizontal elements
    int z_count = 1;             // vertical elements
    double spacing_ratio = 0.5;  // d / lambda

    int size() const noexcept { return y_count * z_count; }

    void validate() const {
        detail::require(y_count >= 1 && z_count >= 1,
                        "PlanarArrayConfig: element counts must be >= 1");
        detail::require(std::isfinite(spacing_ratio) && spacing_ratio > 0.0,
                        "PlanarArrayConfig: spacing_ratio must be positive");
    }

    friend bool operator==(const PlanarArrayConfig&, const PlanarArrayConfig&) = default;
};

/// One bandit arm: a receive direction (azimuth in [0, 2pi], elevation in
/// [-pi/2, pi/2]).
struct Strategy {
    double azimuth = 0.0;
    double elevation = 0.0;

    bool in_domain() const noexcept {
        return std::isfinite(azimuth) && std::isfinite(elevation) &&
               azimuth >= -kAngleSlack && azimuth <= kTwoPi + kAngleSlack &&
               elevation >= -kHalfPi - kAngleSlack && elevation <= kHalfPi + kAngleSlack;
    }

    void validate() const {
        detail::require(in_domain(), "Strategy: angles outside [0, 2pi] x [-pi/2, pi/2]");
    }

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline double distance(const Strategy& a, const Strategy& b) noexcept {
    return std::hypot(a.azimuth - b.azimuth, a.elevation - b.elevation);
}

template <typename Scalar = double>
struct PathComponent {
    std::complex<Scalar> gain{1, 0};
    Scalar aoa_azimuth = 0;
    Scalar aoa_elevation = 0;
    Scalar aod_azimuth = 0;
    Scalar aod_elevation = 0;

    Strategy arrival() const { return {double(aoa_azimuth), double(aoa_elevation)}; }
    Strategy departure() const { return {double(aod_azimuth), double(aod_elevation)}; }
};

template <typename Scalar = double>
struct ChannelRealization {
    CMatrix<Scalar> matrix;  // N_UE x N_BS
    std::vector<PathComponent<Scalar>> paths;
    PlanarArrayConfig bs_config;
    PlanarArrayConfig ue_config;
};

/// Unit-norm planar array response. Element (m, n) sits at index m * Z + n
/// and carries phase 2*pi*(d/lambda)*(m sin(az) sin(el) + n cos(el)).
template <typename Scalar = double>
CVector<Scalar> array_response(const PlanarArrayConfig& cfg, Scalar azimuth, Scalar elevation) {
    cfg.validate();
    detail::require(std::isfinite(double(azimuth)) && std::isfinite(double(elevation)),
                    "array_response: non-finite angle");

    const Scalar two_pi_d = Scalar(kTwoPi) * Scalar(cfg.spacing_ratio);
    const Scalar y_step = two_pi_d * std::sin(azimuth) * std::sin(elevation);
    const Scalar z_step = two_pi_d * std::cos(elevation);
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(cfg.size()));

    CVector<Scalar> a(cfg.size());
    for (int m = 0; m < cfg.y_count; ++m) {
        for (int n = 0; n < cfg.z_count; ++n) {
            const Scalar phase = Scalar(m) * y_step + Scalar(n) * z_step;
            a(m * cfg.z_count + n) = std::polar(scale, phase);
        }
    }
    return a;
}

template <typename Scalar = double>
CVector<Scalar> array_response(const PlanarArrayConfig& cfg, const Strategy& s) {
    return array_response<Scalar>(cfg, Scalar(s.azimuth), Scalar(s.elevation));
}

/// H = sqrt(N_BS N_UE / L) * sum_l gain_l a_UE(aoa_l) a_BS(aod_l)^H
template <typename Scalar = double>
ChannelRealization<Scalar> synthesize_channel(const PlanarArrayConfig& bs_cfg,
                                              const PlanarArrayConfig& ue_cfg,
                                              std::vector<PathComponent<Scalar>> paths) {
    bs_cfg.validate();
    ue_cfg.validate();
    detail::require(!paths.empty(), "synthesize_channel: path list is empty");

    const auto num_paths = static_cast<int>(paths.size());
    if (num_paths > std::min(bs_cfg.size(), ue_cfg.size())) {
        std::cerr << "beamlearn: warning: " << num_paths
                  << " paths exceed min(N_BS, N_UE); the channel is no longer sparse\n";
    }

    CMatrix<Scalar> h = CMatrix<Scalar>::Zero(ue_cfg.size(), bs_cfg.size());
    for (const auto& p : paths) {
        const auto a_ue = array_response<Scalar>(ue_cfg, p.aoa_azimuth, p.aoa_elevation);
        const auto a_bs = array_response<Scalar>(bs_cfg, p.aod_azimuth, p.aod_elevation);
        h.noalias() += p.gain * a_ue * a_bs.adjoint();
    }
    h *= std::sqrt(Scalar(bs_cfg.size()) * Scalar(ue_cfg.size()) / Scalar(num_paths));
    return {std::move(h), std::move(paths), bs_cfg, ue_cfg};
}

/// Circularly-symmetric complex Gaussian with E|x|^2 = power.
template <typename Scalar, typename Rng>
std::complex<Scalar> complex_gaussian(Rng& rng, Scalar power) {
    std::normal_distribution<Scalar> normal(Scalar(0), std::sqrt(power / Scalar(2)));
    const Scalar re = normal(rng);
    const Scalar im = normal(rng);
    return {re, im};
}

/// Rayleigh fading coefficient (g1 + j g2) / sqrt(2) scaled to E|alpha|^2 = mean_power.
template <typename Scalar, typename Rng>
std::complex<Scalar> rayleigh_gain(Rng& rng, Scalar mean_power = Scalar(1)) {
    return complex_gaussian<Scalar>(rng, mean_power);
}

/// Channel, BS precoder and measurement settings seen by the learning UE.
template <typename Scalar = double>
class Environment {
public:
    struct Settings {
        Scalar tx_power = 1;
        Scalar noise_power = 1;
        int samples_per_dwell = 10;
        Scalar mean_path_power = 1;           // only used for the default cap
        std::optional<Scalar> reward_cap{};   // defaults to the aligned single-path SNR
    };

    static Scalar default_reward_cap(Scalar tx_power, Scalar noise_power,
                                     const PlanarArrayConfig& bs, const PlanarArrayConfig& ue,
                                     Scalar mean_path_power) {
        return tx_power / noise_power * Scalar(bs.size()) * Scalar(ue.size()) * mean_path_power;
    }

    Environment(ChannelRealization<Scalar> channel, CVector<Scalar> precoder, Settings settings)
        : channel_(std::move(channel)), precoder_(std::move(precoder)), settings_(settings) {
        detail::require(precoder_.size() == channel_.bs_config.size(),
                        "Environment: precoder length must equal N_BS");
        detail::require(std::abs(double(precoder_.squaredNorm()) - 1.0) <= 1e-12,
                        "Environment: precoder must have unit norm");
        detail::require(std::isfinite(double(settings_.tx_power)) && settings_.tx_power >= 0,
                        "Environment: tx_power must be nonnegative");
        detail::require(std::isfinite(double(settings_.noise_power)) && settings_.noise_power > 0,
                        "Environment: noise_power must be positive");
        detail::require(settings_.samples_per_dwell >= 1,
                        "Environment: samples_per_dwell must be >= 1");
        reward_cap_ = settings_.reward_cap.value_or(
            default_reward_cap(settings_.tx_power, settings_.noise_power, channel_.bs_config,
                               channel_.ue_config, settings_.mean_path_power));
        detail::require(std::isfinite(double(reward_cap_)) && reward_cap_ > 0,
                        "Environment: reward_cap must be positive (set it explicitly when P = 0)");
        effective_ = channel_.matrix * precoder_;
    }

    const ChannelRealization<Scalar>& channel() const noexcept { return channel_; }
    const CVector<Scalar>& precoder() const noexcept { return precoder_; }
    /// H * f_RF, the vector the UE combiner sees.
    const CVector<Scalar>& effective_channel() const noexcept { return effective_; }
    Scalar tx_power() const noexcept { return settings_.tx_power; }
    Scalar noise_power() const noexcept { return settings_.noise_power; }
    Scalar snr() const noexcept { return settings_.tx_power / settings_.noise_power; }
    int samples_per_dwell() const noexcept { return settings_.samples_per_dwell; }
    Scalar reward_cap() const noexcept { return reward_cap_; }
    const Settings& settings() const noexcept { return settings_; }
    const PlanarArrayConfig& ue_config() const noexcept { return channel_.ue_config; }
    const PlanarArrayConfig& bs_config() const noexcept { return channel_.bs_config; }

    /// Same channel and settings, different transmit power. The cap is kept
    /// unless `rescale_cap` is set, in which case it scales with the power.
    Environment with_tx_power(Scalar tx_power, bool rescale_cap) const {
        detail::require(!rescale_cap || settings_.tx_power > 0,
                        "Environment::with_tx_power: cannot rescale a cap from zero power");
        Settings s = settings_;
        s.reward_cap = rescale_cap ? reward_cap_ * (tx_power / settings_.tx_power) : reward_cap_;
        s.tx_power = tx_power;
        return Environment(channel_, precoder_, s);
    }

private:
    ChannelRealization<Scalar> channel_;
    CVector<Scalar> precoder_;
    Settings settings_;
    Scalar reward_cap_{};
    CVector<Scalar> effective_;
};

/// Normalized noiseless SNR for an arbitrary unit-norm combiner.
template <typename Scalar>
Scalar expected_cost(const Environment<Scalar>& env, const CVector<Scalar>& combiner) {
    const std::complex<Scalar> gain = combiner.dot(env.effective_channel());  // w^H H f
    return env.snr() * std::norm(gain) / env.reward_cap();
}

/// (P / sigma^2) |w(s)^H H f_RF|^2 / reward_cap
template <typename Scalar>
Scalar expected_cost(const Environment<Scalar>& env, const Strategy& s) {
    return expected_cost(env, array_response<Scalar>(env.ue_config(), s));
}

/// Unnormalized SNR (linear) along s.
template <typename Scalar>
Scalar expected_snr(const Environment<Scalar>& env, const Strategy& s) {
    return expected_cost(env, s) * env.reward_cap();
}

/// Noisy normalized SNR estimate from K dwell samples
/// y_k = w^H (H f s_k + n_k), clipped to [0, 1].
template <typename Scalar, typename SymbolRng, typename NoiseRng>
Scalar measure_reward(const Environment<Scalar>& env, const CVector<Scalar>& combiner,
                      SymbolRng& symbol_rng, NoiseRng& noise_rng) {
    const int k_samples = env.samples_per_dwell();
    detail::require(k_samples >= 1, "measure_reward: samples_per_dwell must be >= 1");

    const std::complex<Scalar> gain = combiner.dot(env.effective_channel());
    const Scalar sigma2 = env.noise_power();
    const auto n_ue = combiner.size();

    Scalar energy = 0;
    for (int k = 0; k < k_samples; ++k) {
        const std::complex<Scalar> symbol = complex_gaussian<Scalar>(symbol_rng, env.tx_power());
        std::complex<Scalar> filtered_noise{0, 0};
        for (Eigen::Index i = 0; i < n_ue; ++i) {
            filtered_noise += std::conj(combiner(i)) * complex_gaussian<Scalar>(noise_rng, sigma2);
        }
        energy += std::norm(gain * symbol + filtered_noise);
    }
    const Scalar snr_estimate = std::max(Scalar(0), energy / Scalar(k_samples) - sigma2) / sigma2;
    return std::clamp(snr_estimate / env.reward_cap(), Scalar(0), Scalar(1));
}

template <typename Scalar, typename SymbolRng, typename NoiseRng>
Scalar measure_reward(const Environment<Scalar>& env, const Strategy& s, SymbolRng& symbol_rng,
                      NoiseRng& noise_rng) {
    return measure_reward(env, array_response<Scalar>(env.ue_config(), s), symbol_rng, noise_rng);
}

template <typename Scalar, typename Rng>
Scalar measure_reward(const Environment<Scalar>& env, const Strategy& s, Rng& rng) {
    return measure_reward(env, s, rng, rng);
}

/// expected_cost evaluated through the separable structure of the planar
/// response: w^H g = ey^H G conj(ez) / sqrt(N), with G the Y x Z reshape
/// of H f_RF. Costs Y + Z complex exponentials per direction instead of Y Z.
template <typename Scalar = double>
class CostSurface {
public:
    explicit CostSurface(const Environment<Scalar>& env)
        : cfg_(env.ue_config()),
          scale_(env.snr() / env.reward_cap() / Scalar(env.ue_config().size())),
          grid_(cfg_.y_count, cfg_.z_count) {
        const auto& g = env.effective_channel();
        for (int m = 0; m < cfg_.y_count; ++m)
            for (int n = 0; n < cfg_.z_count; ++n) grid_(m, n) = g(m * cfg_.z_count + n);
        ey_.resize(cfg_.y_count);
        ez_.resize(cfg_.z_count);
    }

    Scalar operator()(Scalar azimuth, Scalar elevation) {
        const Scalar two_pi_d = Scalar(kTwoPi) * Scalar(cfg_.spacing_ratio);
        const Scalar y_step = two_pi_d * std::sin(azimuth) * std::sin(elevation);
        const Scalar z_step = two_pi_d * std::cos(elevation);
        for (int m = 0; m < cfg_.y_count; ++m) ey_(m) = std::polar(Scalar(1), -Scalar(m) * y_step);
        for (int n = 0; n < cfg_.z_count; ++n) ez_(n) = std::polar(Scalar(1), -Scalar(n) * z_step);
        const std::complex<Scalar> gain = ey_.transpose() * grid_ * ez_;
        return scale_ * std::norm(gain);
    }

    Scalar operator()(const Strategy& s) { return (*this)(Scalar(s.azimuth), Scalar(s.elevation)); }

private:
    PlanarArrayConfig cfg_;
    Scalar scale_;
    CMatrix<Scalar> grid_;
    CVector<Scalar> ey_;
    CVector<Scalar> ez_;
};

using Environmentd = Environment<double>;
using ChannelRealizationd = ChannelRealization<double>;
using PathComponentd = PathComponent<double>;

}  // namespace beamlearn

#endif  // BEAMLEARN_ARRAY_CHANNEL_HPP
