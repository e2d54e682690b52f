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

#include <numbers>

#include <hscpark/geometry.hpp>

namespace hscpark::vehicle
{
    struct VehicleParams
    {
        double wheelbase = 2.7;                              ///< m
        double steering_ratio = 16.0;                        ///< column angle per road-wheel angle
        double max_column_angle = 2.5 * std::numbers::pi;    ///< rad
        double reverse_speed = -1.0;                         ///< m/s, negative when backing
        double speed_ramp = 0.5;                             ///< s, linear ramp from rest

        void validate () const;
    };

    /// Rear-axle pose plus speed. `lateral_velocity_signal` is the velocity component along the
    /// reference normal handed to step_vehicle.
    struct VehicleState
    {
        double x = 0.0;
        double y = 0.0;
        double heading = 0.0;
        double speed = 0.0;
        double lateral_velocity_signal = 0.0;

        [[nodiscard]] Vec2 position () const noexcept { return {x, y}; }
        [[nodiscard]] Pose2D pose () const noexcept { return {x, y, heading}; }
        [[nodiscard]] Vec2 velocity () const noexcept { return speed * unit_from_angle (heading); }
    };

    /// Second-order column: J theta'' = tau_c + tau_das - B theta' - K_sat theta, hard stop at +-max_angle.
    struct SteeringColumn
    {
        double theta = 0.0;
        double theta_dot = 0.0;
        double inertia = 0.05;           ///< kg m^2
        double damping = 0.3;            ///< N m s / rad
        double aligning_stiffness = 1.0; ///< N m / rad
        double max_angle = 2.5 * std::numbers::pi;

        void validate () const;
    };

    /// Road-wheel angle commanded by the column.
    [[nodiscard]] inline double road_wheel_angle (double theta, const VehicleParams &params) noexcept
    {
        return theta / params.steering_ratio;
    }

    /// Speed command at time t: linear ramp to reverse_speed over speed_ramp seconds.
    [[nodiscard]] double speed_profile (double t, const VehicleParams &params) noexcept;

    /// One classical RK4 step of the kinematic bicycle (x' = v cos psi, y' = v sin psi,
    /// psi' = v tan(delta) / L) with delta held at column.theta / steering_ratio.
    /// Afterwards lateral_velocity_signal = velocity . reference_normal.
    [[nodiscard]] VehicleState step_vehicle (const VehicleState &state, const SteeringColumn &column, const VehicleParams &params,
                                             double dt, Vec2 reference_normal = {0.0, 1.0});

    /// Semi-implicit (velocity-first) Euler step of the column under constant external torque.
    [[nodiscard]] SteeringColumn step_steering (const SteeringColumn &column, double tau_c, double tau_das, double dt);
} // namespace hscpark::vehicle
