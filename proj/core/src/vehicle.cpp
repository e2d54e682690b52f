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

#include <hscpark/vehicle.hpp>

#include <hscpark/error.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hscpark::vehicle
{
    namespace
    {
        struct Derivative
        {
            double dx, dy, dpsi;
        };

        Derivative kinematics (double psi, double v, double curvature_rate) noexcept
        {
            return {v * std::cos (psi), v * std::sin (psi), v * curvature_rate};
        }

        void check_dt (double dt)
        {
            if (!(dt > 0.0 && dt <= 0.01))
                throw std::domain_error ("time step must lie in (0, 0.01] s");
        }
    } // namespace

    void VehicleParams::validate () const
    {
        if (!(wheelbase > 0.0))
            throw ConfigError ("wheelbase must be > 0");
        if (!(steering_ratio > 0.0))
            throw ConfigError ("steering_ratio must be > 0");
        if (!(max_column_angle > 0.0))
            throw ConfigError ("max_column_angle must be > 0");
        if (!(max_column_angle / steering_ratio < std::numbers::pi / 2.0))
            throw ConfigError ("max_column_angle / steering_ratio must stay below pi/2");
        if (!(reverse_speed < 0.0))
            throw ConfigError ("reverse_speed must be < 0");
        if (!(speed_ramp >= 0.0))
            throw ConfigError ("speed_ramp must be >= 0");
    }

    void SteeringColumn::validate () const
    {
        if (!(inertia > 0.0))
            throw ConfigError ("column inertia must be > 0");
        if (!(damping >= 0.0))
            throw ConfigError ("column damping must be >= 0");
        if (!(aligning_stiffness >= 0.0))
            throw ConfigError ("aligning_stiffness must be >= 0");
        if (!(max_angle > 0.0))
            throw ConfigError ("column max_angle must be > 0");
        if (std::abs (theta) > max_angle)
            throw ConfigError ("initial column angle exceeds max_angle");
    }

    double speed_profile (double t, const VehicleParams &params) noexcept
    {
        if (t <= 0.0)
            return 0.0;
        if (params.speed_ramp <= 0.0 || t >= params.speed_ramp)
            return params.reverse_speed;
        return params.reverse_speed * (t / params.speed_ramp);
    }

    VehicleState step_vehicle (const VehicleState &state, const SteeringColumn &column, const VehicleParams &params, double dt,
                               Vec2 reference_normal)
    {
        check_dt (dt);
        const double delta = road_wheel_angle (column.theta, params);
        if (!(std::abs (delta) < std::numbers::pi / 2.0))
            throw std::domain_error ("road-wheel angle must stay within (-pi/2, pi/2)");
        const double rate = std::tan (delta) / params.wheelbase;
        const double v = state.speed;

        const Derivative k1 = kinematics (state.heading, v, rate);
        const Derivative k2 = kinematics (state.heading + 0.5 * dt * k1.dpsi, v, rate);
        const Derivative k3 = kinematics (state.heading + 0.5 * dt * k2.dpsi, v, rate);
        const Derivative k4 = kinematics (state.heading + dt * k3.dpsi, v, rate);

        VehicleState next = state;
        next.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        next.y += dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
        next.heading = normalize_angle (state.heading + dt / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi));
        next.lateral_velocity_signal = dot (next.velocity (), reference_normal);
        return next;
    }

    SteeringColumn step_steering (const SteeringColumn &column, double tau_c, double tau_das, double dt)
    {
        check_dt (dt);
        if (!std::isfinite (tau_c) || !std::isfinite (tau_das))
            throw std::domain_error ("column torques must be finite");
        SteeringColumn next = column;
        const double accel =
            (tau_c + tau_das - column.damping * column.theta_dot - column.aligning_stiffness * column.theta) / column.inertia;
        next.theta_dot = column.theta_dot + dt * accel;
        next.theta = column.theta + dt * next.theta_dot;
        if (next.theta > column.max_angle)
        {
            next.theta = column.max_angle;
            next.theta_dot = 0.0;
        }
        else if (next.theta < -column.max_angle)
        {
            next.theta = -column.max_angle;
            next.theta_dot = 0.0;
        }
        return next;
    }
} // namespace hscpark::vehicle
