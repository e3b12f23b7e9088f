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

#ifndef BEAMLEARN_ERRORS_HPP
#define BEAMLEARN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beamlearn {

/// Raised when an argument lies outside the domain an operation accepts
/// (non-finite angle, empty path list, zero horizon, ...).
class InputDomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a caller breaks a runtime contract, e.g. feeding a reward
/// outside [0, 1] to UCB1 or mismatched series lengths.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
    if (!condition) throw InputDomainError(what);
}

inline void ensure(bool condition, const std::string& what) {
    if (!condition) throw ContractViolation(what);
}

}  // namespace detail
}  // namespace beamlearn

#endif  // BEAMLEARN_ERRORS_HPP
