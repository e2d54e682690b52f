// Copyright 2026 The hscpark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace hscpark::coop
{
    struct PseudoWorkConfig
    {
        double window = 0.5;     ///< Delta T, s
        double gamma1_sq = 0.01; ///< driver threshold
        double gamma2_sq = 0.01; ///< assist threshold

        void validate () const;
    };

    struct PseudoWorkPair
    {
        double w_c = 0.0;
        double w_das = 0.0;
        double t = 0.0;
    };

    /// Cooperative states. III merges the system-led cooperative and uncooperative sub-states.
    enum class CoopState
    {
        I,   ///< driver-led cooperative
        II,  ///< driver-led uncooperative: driver resisting the assist
        III, ///< system-led
        IV,  ///< passive
        V,   ///< dead zone
    };
    inline constexpr std::size_t kStateCount = 5;

    [[nodiscard]] std::string_view to_string (CoopState s) noexcept;
    [[nodiscard]] std::optional<CoopState> parse_state (std::string_view text) noexcept;

    enum class Intent
    {
        Consistent,
        Inconsistent,
        Indeterminate
    };

    /// Uniformly sampled signal pair starting at t0.
    struct SampledSeries
    {
        std::span<const double> torque;
        std::span<const double> velocity;
        double t0 = 0.0;
        double dt = 0.0;
    };

    /// (1 / window) * integral over [t - window, t] of torque * velocity, trapezoidal, with linear
    /// interpolation of the product inside partial end intervals.
    /// Throws InsufficientHistory if the window leaves the sampled range.
    [[nodiscard]] double pseudo_work (const SampledSeries &series, double t, double window);

    /// w_c >= gamma1^2.
    [[nodiscard]] bool driver_has_initiative (double w_c, const PseudoWorkConfig &cfg) noexcept;
    [[nodiscard]] Intent intent_consistency (double w_c, double w_das, const PseudoWorkConfig &cfg) noexcept;
    [[nodiscard]] CoopState classify (double w_c, double w_das, const PseudoWorkConfig &cfg) noexcept;

    struct Occupancy
    {
        std::array<double, kStateCount> fraction{};

        [[nodiscard]] double operator[] (CoopState s) const noexcept { return fraction[static_cast<std::size_t> (s)]; }
    };

    /// Fraction of samples per state. Throws EmptyTimeline on empty input.
    [[nodiscard]] Occupancy state_occupancy (std::span<const CoopState> timeline);
} // namespace hscpark::coop
