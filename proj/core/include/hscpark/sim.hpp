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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hscpark/assist.hpp>
#include <hscpark/bezier.hpp>
#include <hscpark/coop_status.hpp>
#include <hscpark/driver.hpp>
#include <hscpark/planner.hpp>
#include <hscpark/vehicle.hpp>

namespace hscpark::sim
{
    /// Velocity signal multiplied into the pseudo-work integrand.
    enum class VelocitySignal
    {
        LateralErrorRate, ///< time derivative of the signed lateral error to the assist path
        ColumnRate,       ///< steering column rate theta'
    };

    struct CaptureTolerance
    {
        double position = 0.15;                         ///< m
        double heading = 5.0 * std::numbers::pi / 180.0; ///< rad
    };

    struct ScenarioConfig
    {
        Pose2D start;                        ///< planning start (fixed starting point)
        Pose2D goal;                         ///< parking pose
        std::optional<Pose2D> initial_pose;  ///< where the vehicle actually starts; defaults to start
        path::PlannerConfig planner;
        vehicle::VehicleParams vehicle;
        vehicle::SteeringColumn column;      ///< initial state and column parameters
        coop::PseudoWorkConfig pseudo_work;
        VelocitySignal velocity_signal = VelocitySignal::LateralErrorRate;
        double dt = 0.001;                   ///< physics step, s
        double control_dt = 0.01;            ///< driver / assist / classification tick, s
        double timeout = 40.0;               ///< s
        CaptureTolerance capture;
        std::uint64_t seed = 1;

        /// Throws ConfigError when an invariant fails.
        void validate () const;
        [[nodiscard]] int substeps () const;
    };

    /// Reverse parking into a slot on the vehicle's left-rear.
    [[nodiscard]] ScenarioConfig canonical_scenario ();

    struct DriverSetup
    {
        driver::DriverParams params;
        /// Path the driver tracks; the assist path when empty.
        std::optional<driver::DriverIntent> intent;
    };

    struct StepRecord
    {
        double t = 0.0;
        double x = 0.0;
        double y = 0.0;
        double heading = 0.0;
        double theta = 0.0;
        double theta_d_driver = 0.0;
        double theta_d_assist = 0.0;
        double tau_msl = 0.0;
        double tau_c = 0.0;
        double tau_das = 0.0;
        double e = 0.0;             ///< signed lateral error to the assist path
        double v_signal = 0.0;      ///< pseudo-work velocity signal (not part of the CSV)
        std::optional<double> w_c;  ///< empty until a full window of history exists
        std::optional<double> w_das;
        std::optional<coop::CoopState> state;
    };

    enum class Termination
    {
        Captured,
        Overshoot,
        Timeout
    };

    struct TrialLog
    {
        std::vector<StepRecord> records;
        path::BezierPath assist_path;
        path::BezierPath driver_path;
        Pose2D goal;
        vehicle::SteeringColumn initial_column;
        int substeps = 10;
        double dt = 0.001;
        bool captured = false;
        Termination termination = Termination::Timeout;
    };

    struct TrialMetrics
    {
        double rms_e = 0.0;
        double mean_abs_tau_c = 0.0;
        double mean_w_c = 0.0;   ///< over classified records
        double mean_w_das = 0.0; ///< over classified records
        double final_position_error = 0.0;
        double final_heading_error = 0.0;
        double duration = 0.0;
        coop::Occupancy occupancy; ///< over classified records; all V when none are classified
        std::size_t classified = 0;
        bool captured = false;
    };

    /// Driver intent on `assist_path` shifted by `offset` m along the left normal of the start travel tangent.
    [[nodiscard]] driver::DriverIntent offset_intent (const path::BezierPath &assist_path, const ScenarioConfig &scenario, double offset);

    /// Plans the assist path, then integrates the closed loop until capture, overshoot or timeout.
    /// Throws PlanInfeasible or NumericalDivergence.
    [[nodiscard]] TrialLog run_trial (const ScenarioConfig &scenario, const DriverSetup &driver, const assist::AssistConfig &assist);

    /// Same loop on an already planned assist path.
    [[nodiscard]] TrialLog run_trial (const ScenarioConfig &scenario, const path::BezierPath &assist_path, const DriverSetup &driver,
                                      const assist::AssistConfig &assist);

    /// Throws EmptyLog on a log without records.
    [[nodiscard]] TrialMetrics compute_metrics (const TrialLog &log);

    inline constexpr std::string_view trial_log_header =
        "t,x,y,heading,theta,theta_d_driver,theta_d_assist,tau_msl,tau_c,tau_das,e,w_c,w_das,state";

    [[nodiscard]] std::string format_trial_log (const TrialLog &log);
    /// Rebuilds the records of a CSV produced by format_trial_log (path and column data are not stored).
    [[nodiscard]] std::vector<StepRecord> parse_trial_log (std::string_view csv_text);

    /// Metrics straight from records, for logs read back from CSV.
    [[nodiscard]] TrialMetrics metrics_from_records (const std::vector<StepRecord> &records, const Pose2D &goal, bool captured);

    [[nodiscard]] std::string format_metrics (const TrialMetrics &m);
} // namespace hscpark::sim
