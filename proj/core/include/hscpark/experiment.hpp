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
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <hscpark/assist.hpp>
#include <hscpark/driver.hpp>
#include <hscpark/sim.hpp>

namespace hscpark::experiment
{
    /// The four protocol phases, in execution order.
    enum class Phase
    {
        Before,     ///< a) no assist, self-selected start
        During,     ///< b) condition's assist, fixed start
        AfterFixed, ///< c) no assist, fixed start
        AfterSelf,  ///< d) no assist, self-selected start
    };
    inline constexpr std::array<Phase, 4> kPhases{Phase::Before, Phase::During, Phase::AfterFixed, Phase::AfterSelf};

    [[nodiscard]] std::string_view phase_label (Phase p) noexcept;
    [[nodiscard]] std::optional<Phase> parse_phase (std::string_view label) noexcept;
    /// Self-selected phases start from a jittered pose.
    [[nodiscard]] bool self_selected_start (Phase p) noexcept;

    struct TrialCounts
    {
        int before = 10;
        int during = 10;
        int after_fixed = 3;
        int after_self = 3;

        [[nodiscard]] int of (Phase p) const noexcept;
        [[nodiscard]] int total () const noexcept { return before + during + after_fixed + after_self; }
    };

    struct LearningRule
    {
        bool enabled = false;
        double rate = 0.1;
        double e_ref = 0.3; ///< m
    };

    struct StartJitter
    {
        double position_std = 0.3;                          ///< m, per axis
        double heading_std = 3.0 * std::numbers::pi / 180.0; ///< rad
    };

    struct ExperimentPlan
    {
        std::vector<assist::Condition> conditions{assist::Condition::A, assist::Condition::B, assist::Condition::C};
        TrialCounts trials;
        int drivers_per_condition = 6;
        std::uint64_t base_seed = 2026;
        LearningRule learning;
        StartJitter self_select_jitter;
        /// Initial skill of driver k is uniform in [skill_min, skill_max], drawn from (base_seed, k)
        /// so that driver k starts identically under every condition.
        double skill_min = 0.0;
        double skill_max = 0.3;
        int threads = 0; ///< 0 = hardware concurrency

        sim::ScenarioConfig scenario = sim::canonical_scenario ();
        driver::SkillAnchors anchors = driver::SkillAnchors::defaults ();
        driver::PreviewParams assist_preview;

        void validate () const;
    };

    struct TrialRow
    {
        assist::Condition condition = assist::Condition::A;
        int driver = 0;      ///< 1-based
        Phase phase = Phase::Before;
        int trial = 0;       ///< 1-based position in the 26-trial sequence
        double skill = 0.0;  ///< skill the trial was driven with
        bool assisted = false;
        double max_abs_tau_das = 0.0;
        sim::TrialMetrics metrics; ///< quantized to the 9 digits written to CSV
    };

    struct Aggregate
    {
        double mean = 0.0;
        double stddev = 0.0; ///< sample standard deviation; 0 for fewer than two values
    };

    struct PhaseResult
    {
        Phase phase = Phase::Before;
        std::vector<TrialRow> rows;
        Aggregate rms_e;
        Aggregate mean_abs_tau_c;
        Aggregate mean_w_c;
        Aggregate mean_w_das;
    };

    /// Per-driver error decrease relative to the before phase (positive = improvement).
    struct DriverDelta
    {
        int driver = 0;
        double before = 0.0;
        double during = 0.0;
        double after = 0.0; ///< mean over both after phases
        double delta_during = 0.0;
        double delta_after = 0.0;
    };

    struct ConditionResult
    {
        assist::Condition condition = assist::Condition::A;
        std::array<PhaseResult, 4> phases;
        std::vector<DriverDelta> deltas;
        std::optional<double> delta_correlation; ///< empty: undefined
    };

    struct ExperimentReport
    {
        std::vector<ConditionResult> conditions;
        /// Pooled over drivers of assisted conditions; empty when undefined or not applicable.
        std::optional<double> delta_correlation;
        bool correlation_applicable = false;
        std::vector<std::string> failures;
        bool learning_enabled = false;

        [[nodiscard]] const ConditionResult *find (assist::Condition c) const noexcept;
        [[nodiscard]] std::size_t trial_count () const noexcept;
    };

    /// Runs every (condition, driver) sequence of the protocol. Trial errors are collected in
    /// `failures`, annotated with their coordinates, instead of aborting the run.
    [[nodiscard]] ExperimentReport run_experiment (const ExperimentPlan &plan);

    struct DeltaPair
    {
        double during = 0.0;
        double after = 0.0;
    };

    /// Sample correlation; empty for fewer than 3 rows or zero variance in either coordinate.
    [[nodiscard]] std::optional<double> correlate_deltas (std::span<const DeltaPair> rows);

    [[nodiscard]] Aggregate aggregate (std::span<const double> values);
    /// Recomputes phase aggregates and driver deltas from rows alone.
    [[nodiscard]] ConditionResult summarize_condition (assist::Condition c, std::vector<TrialRow> rows);

    inline constexpr std::string_view trial_csv_header =
        "condition,driver,phase,trial,rms_e,mean_abs_tau_c,mean_w_c,mean_w_das,captured,duration";

    [[nodiscard]] std::string format_trial_csv (const ExperimentReport &report);
    [[nodiscard]] std::vector<TrialRow> parse_trial_csv (std::string_view text);

    /// Per-condition tables laid out like the phase protocol, plus the delta/correlation section.
    [[nodiscard]] std::string format_summary (const ExperimentReport &report);
} // namespace hscpark::experiment
