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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <hscpark/assist.hpp>
#include <hscpark/driver.hpp>
#include <hscpark/experiment.hpp>
#include <hscpark/sim.hpp>

namespace hscpark::config
{
    /// Everything a run can be configured with. Defaults are the canonical scenario.
    struct RunConfig
    {
        sim::ScenarioConfig scenario = sim::canonical_scenario ();
        driver::SkillAnchors anchors = driver::SkillAnchors::defaults ();
        double driver_skill = 1.0;
        /// Lateral offset of the driver's own target path from the assist path, m; none = same path.
        std::optional<double> intent_offset;
        assist::Condition condition = assist::Condition::A;
        driver::PreviewParams assist_preview;
        experiment::ExperimentPlan experiment;

        void validate () const;

        [[nodiscard]] driver::DriverParams driver_params () const { return anchors.at (driver_skill); }
        [[nodiscard]] assist::AssistConfig assist_config () const;
        /// The experiment plan with the scenario, anchors and assist preview of this file.
        [[nodiscard]] experiment::ExperimentPlan experiment_plan () const;
    };

    /// Parses the sectioned key = value format. `source` prefixes diagnostics.
    /// Throws ConfigError naming the line for syntax errors, unknown or repeated keys and bad values.
    [[nodiscard]] RunConfig parse_run_config (std::string_view text, std::string_view source = "config");
    [[nodiscard]] RunConfig load_run_config (const std::filesystem::path &file);

    /// Writes every key with its current value and unit, 9 significant digits. Formatting the parsed
    /// result reproduces the text exactly.
    [[nodiscard]] std::string format_run_config (const RunConfig &cfg);
} // namespace hscpark::config
