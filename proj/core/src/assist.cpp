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

#include <hscpark/assist.hpp>

#include <hscpark/error.hpp>

#include <cmath>

namespace hscpark::assist
{
    void AssistConfig::validate () const
    {
        if (!(gain_cs >= 0.0) || !std::isfinite (gain_cs))
            throw ConfigError ("gain_cs must be >= 0");
        preview.validate ();
    }

    double condition_gain (Condition c) noexcept
    {
        switch (c)
        {
        case Condition::A:
            return 0.0;
        case Condition::B:
            return 0.5;
        case Condition::C:
            return 1.0;
        }
        return 0.0;
    }

    char condition_name (Condition c) noexcept
    {
        switch (c)
        {
        case Condition::A:
            return 'A';
        case Condition::B:
            return 'B';
        case Condition::C:
            return 'C';
        }
        return '?';
    }

    std::optional<Condition> parse_condition (std::string_view name) noexcept
    {
        if (name == "A" || name == "a")
            return Condition::A;
        if (name == "B" || name == "b")
            return Condition::B;
        if (name == "C" || name == "c")
            return Condition::C;
        return std::nullopt;
    }

    double assist_torque (double e, double theta, double theta_d, const AssistConfig &cfg) noexcept
    {
        if (!cfg.enabled)
            return 0.0;
        return -cfg.gain_cs * std::abs (e) * (theta - theta_d) + 0.0; // no negative zero
    }
} // namespace hscpark::assist
