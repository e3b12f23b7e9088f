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

#ifndef BEAMLEARN_RNG_HPP
#define BEAMLEARN_RNG_HPP

#include <cstdint>
#include <random>

namespace beamlearn {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to derive decorrelated stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream indices. The order is fixed; new consumers are appended so that
/// existing streams never shift.
enum class Stream : std::uint64_t {
    channel = 0,
    symbols = 1,
    noise = 2,
    exploration = 3,
    drift = 4,
    probe = 5,
};

inline Engine make_stream(std::uint64_t seed, Stream stream) {
    const auto index = static_cast<std::uint64_t>(stream);
    return Engine(splitmix64(splitmix64(seed) ^ splitmix64(0xa5a5a5a5ULL + index)));
}

/// One run's set of independent generators.
struct RngStreams {
    Engine channel;
    Engine symbols;
    Engine noise;
    Engine exploration;
    Engine drift;

    explicit RngStreams(std::uint64_t seed)
        : channel(make_stream(seed, Stream::channel)),
          symbols(make_stream(seed, Stream::symbols)),
          noise(make_stream(seed, Stream::noise)),
          exploration(make_stream(seed, Stream::exploration)),
          drift(make_stream(seed, Stream::drift)) {}
};

}  // namespace beamlearn

#endif  // BEAMLEARN_RNG_HPP
