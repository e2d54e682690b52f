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

#include <optional>
#include <string_view>

#include <hscpark/driver.hpp>

namespace hscpark::assist
{
    struct AssistConfig
    {
        double gain_cs = 0.0; ///< N m per (m rad)
        driver::PreviewParams preview;
        bool enabled = true;

        void validate () const;
    };

    /// Gain conditions of the protocol: A = 0, B = 0.5, C = 1.0.
    enum class Condition
    {
        A,
        B,
        C
    };

    [[nodiscard]] double condition_gain (Condition c) noexcept;
    [[nodiscard]] char condition_name (Condition c) noexcept;
    [[nodiscard]] std::optional<Condition> parse_condition (std::string_view name) noexcept;

    /// tau_das = -C_s |e| (theta - theta_d); zero when disabled.
    [[nodiscard]] double assist_torque (double e, double theta, double theta_d, const AssistConfig &cfg) noexcept;
} // namespace hscpark::assist
