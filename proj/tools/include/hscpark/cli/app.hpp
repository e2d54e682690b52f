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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <hscpark/coop_status.hpp>

namespace hscpark::cli
{
    /// Process exit codes. Stable; documented in the README.
    enum ExitCode : int
    {
        kOk = 0,
        kInternalError = 1,
        kUsageError = 2,      ///< bad flags, config errors, malformed or non-uniform CSV
        kPathInfeasible = 3,  ///< `plan` found no feasible path
        kPlanInfeasible = 4,  ///< `simulate` / `experiment` scenario cannot be planned
        kDivergence = 5,      ///< non-finite simulation state
        kTrialFailures = 6,   ///< `experiment` finished but some trials failed
    };

    /// Runs the command line (without the program name). Output files are only written on success.
    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    /// Maximum deviation of a time step from the first one before a trace is rejected, s.
    inline constexpr double kStepTolerance = 1e-6;

    /// Classifies an external trace with header t,tau_c,tau_das,v_signal (extra columns allowed).
    /// `velocity_column` picks the velocity signal. Returns the input rows with w_c,w_das,state
    /// appended; rows earlier than one window carry empty fields.
    /// Throws ConfigError for malformed input, non-uniform steps or bad thresholds.
    [[nodiscard]] std::string classify_trace (std::string_view csv_text, const coop::PseudoWorkConfig &cfg,
                                              std::string_view velocity_column = "v_signal");
} // namespace hscpark::cli
