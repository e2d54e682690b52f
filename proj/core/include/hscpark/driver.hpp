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
#include <vector>

#include <hscpark/bezier.hpp>
#include <hscpark/planner.hpp>
#include <hscpark/rng.hpp>
#include <hscpark/vehicle.hpp>

namespace hscpark::driver
{
    /// Preview steering law parameters, shared by the synthetic driver and the assist.
    struct PreviewParams
    {
        double preview_time = 1.6; ///< s
        double error_gain = 30.0;  ///< column rad per meter of predicted error
        bool feedforward_on = true;

        void validate () const;
    };

    struct DriverParams
    {
        double neuromuscular_gain = 3.0;    ///< N m / rad
        double neuromuscular_damping = 0.2; ///< N m s / rad
        double reaction_delay = 0.1;        ///< s
        double torque_noise_std = 0.02;     ///< N m
        double skill = 1.0;                 ///< 0 = novice anchor, 1 = expert anchor
        PreviewParams preview;

        void validate () const;
    };

    /// Configuration anchors; drivers of intermediate skill interpolate componentwise.
    struct SkillAnchors
    {
        DriverParams novice;
        DriverParams expert;

        [[nodiscard]] static SkillAnchors defaults ();
        [[nodiscard]] DriverParams at (double skill) const;
    };

    /// The path the driver wants to follow. It may differ from the assist's path.
    struct DriverIntent
    {
        path::BezierPath target_path;
    };

    /// Lateral error with its first two time derivatives.
    struct ErrorEstimate
    {
        double e = 0.0;
        double e_dot = 0.0;
        double e_ddot = 0.0;
    };

    /// theta_d from an error estimate and the path's signed curvature at the foot point:
    /// feedforward steering_ratio * atan(L kappa) plus feedback on e + T e' + T^2/2 e'',
    /// both signed for the travel direction, clamped to the column range.
    [[nodiscard]] double preview_command (const ErrorEstimate &err, double signed_curvature, const PreviewParams &prev,
                                          const vehicle::VehicleParams &vp,
                                          path::TravelDirection direction = path::TravelDirection::Reverse) noexcept;

    /// Stateful preview steering: backward differences of the projected error, each low-passed.
    class PreviewSteering
    {
      public:
        static constexpr double kFilterCutoffHz = 5.0;

        PreviewSteering () = default;

        /// Feeds one projected error sample taken `dt` after the previous one.
        ErrorEstimate observe (double lateral_error, double dt) noexcept;

        /// Projects the vehicle, updates the error history and returns theta_d.
        double desired_steer (const vehicle::VehicleState &vehicle, const path::BezierPath &path, const PreviewParams &prev,
                              const vehicle::VehicleParams &vp, double u_hint, double dt,
                              path::TravelDirection direction = path::TravelDirection::Reverse);

        [[nodiscard]] const ErrorEstimate &estimate () const noexcept { return estimate_; }
        [[nodiscard]] double last_u () const noexcept { return last_u_; }

      private:
        ErrorEstimate estimate_;
        double prev_e_[2] = {0.0, 0.0};
        int samples_ = 0;
        double last_u_ = 0.0;
    };

    struct MuscleOutput
    {
        double tau_msl = 0.0; ///< active torque: stiffness on the delayed target plus noise
        double tau_c = 0.0;   ///< torque delivered to the column, limb damping included
    };

    /// Neuromuscular torque generator with a pure reaction delay and seeded torque noise.
    class MuscleModel
    {
      public:
        MuscleModel (const DriverParams &params, double control_dt, double initial_theta, std::uint64_t seed);

        /// tau_c = gain (theta_d(t - delay) - theta) - damping theta' + n.
        MuscleOutput muscle_torque (double theta_d_driver, const vehicle::SteeringColumn &column);

        [[nodiscard]] std::size_t delay_ticks () const noexcept { return buffer_.size () - 1; }

      private:
        DriverParams params_;
        std::vector<double> buffer_;
        std::size_t head_ = 0;
        NormalStream noise_;
    };

    /// skill + rate * max(0, 1 - rms_e / e_ref), clamped to [0, 1].
    [[nodiscard]] double skill_update (double skill, double rms_e, double rate, double e_ref);
} // namespace hscpark::driver
