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
#include <string>
#include <vector>

#include <hscpark/bezier.hpp>
#include <hscpark/experiment.hpp>
#include <hscpark/sim.hpp>

namespace hscpark::cli::plot
{
    /// Planned path, optional driver intent path and driven trajectory in world coordinates.
    [[nodiscard]] std::string trajectory_svg (const path::BezierPath &planned, const std::optional<path::BezierPath> &intent,
                                              const std::vector<sim::StepRecord> &records);

    /// One colored strip per cooperative state run; unclassified time is left grey.
    [[nodiscard]] std::string state_timeline_svg (const std::vector<sim::StepRecord> &records);

    /// Mean rms_e per phase and condition with one-standard-deviation bars.
    [[nodiscard]] std::string phase_error_svg (const experiment::ExperimentReport &report);
} // namespace hscpark::cli::plot
