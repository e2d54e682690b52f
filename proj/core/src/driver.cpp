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

#include <hscpark/driver.hpp>

#include <hscpark/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hscpark::driver
{
    namespace
    {
        double lerp (double a, double b, double t) noexcept { return a + (b - a) * t; }
    } // namespace

    void PreviewParams::validate () const
    {
        if (!(preview_time > 0.0))
            throw ConfigError ("preview_time must be > 0");
        if (!(error_gain > 0.0))
            throw ConfigError ("error_gain must be > 0");
    }

    void DriverParams::validate () const
    {
        if (!(neuromuscular_gain >= 0.0) || !(neuromuscular_damping >= 0.0) || !(reaction_delay >= 0.0) ||
            !(torque_noise_std >= 0.0))
            throw ConfigError ("driver gains, delay and noise must be >= 0");
        if (!(skill >= 0.0 && skill <= 1.0))
            throw ConfigError ("skill must lie in [0, 1]");
        preview.validate ();
    }

    SkillAnchors SkillAnchors::defaults ()
    {
        SkillAnchors a;
        a.expert.neuromuscular_gain = 3.0;
        a.expert.neuromuscular_damping = 0.2;
        a.expert.reaction_delay = 0.1;
        a.expert.torque_noise_std = 0.02;
        a.expert.skill = 1.0;
        a.expert.preview = PreviewParams{};

        a.novice.neuromuscular_gain = 1.0;
        a.novice.neuromuscular_damping = 0.05;
        a.novice.reaction_delay = 0.3;
        a.novice.torque_noise_std = 0.08;
        a.novice.skill = 0.0;
        a.novice.preview = a.expert.preview;
        a.novice.preview.error_gain = 0.6 * a.expert.preview.error_gain;
        return a;
    }

    DriverParams SkillAnchors::at (double skill) const
    {
        const double s = std::clamp (skill, 0.0, 1.0);
        DriverParams p;
        p.neuromuscular_gain = lerp (novice.neuromuscular_gain, expert.neuromuscular_gain, s);
        p.neuromuscular_damping = lerp (novice.neuromuscular_damping, expert.neuromuscular_damping, s);
        p.reaction_delay = lerp (novice.reaction_delay, expert.reaction_delay, s);
        p.torque_noise_std = lerp (novice.torque_noise_std, expert.torque_noise_std, s);
        p.preview.preview_time = lerp (novice.preview.preview_time, expert.preview.preview_time, s);
        p.preview.error_gain = lerp (novice.preview.error_gain, expert.preview.error_gain, s);
        p.preview.feedforward_on = s < 0.5 ? novice.preview.feedforward_on : expert.preview.feedforward_on;
        p.skill = s;
        return p;
    }

    double preview_command (const ErrorEstimate &err, double signed_curvature, const PreviewParams &prev,
                            const vehicle::VehicleParams &vp, path::TravelDirection direction) noexcept
    {
        // Backing up, positive road-wheel angle bends the travel path to the right.
        const double travel_sign = direction == path::TravelDirection::Reverse ? -1.0 : 1.0;
        const double tp = prev.preview_time;
        const double predicted = err.e + tp * err.e_dot + 0.5 * tp * tp * err.e_ddot;
        const double feedback = -travel_sign * prev.error_gain * predicted;
        const double feedforward =
            prev.feedforward_on ? travel_sign * vp.steering_ratio * std::atan (vp.wheelbase * signed_curvature) : 0.0;
        return std::clamp (feedforward + feedback, -vp.max_column_angle, vp.max_column_angle);
    }

    ErrorEstimate PreviewSteering::observe (double lateral_error, double dt) noexcept
    {
        const double alpha = dt / (dt + 1.0 / (2.0 * std::numbers::pi * kFilterCutoffHz));
        if (samples_ >= 1)
        {
            const double raw_rate = (lateral_error - prev_e_[0]) / dt;
            estimate_.e_dot += alpha * (raw_rate - estimate_.e_dot);
        }
        if (samples_ >= 2)
        {
            const double raw_accel = (lateral_error - 2.0 * prev_e_[0] + prev_e_[1]) / (dt * dt);
            estimate_.e_ddot += alpha * (raw_accel - estimate_.e_ddot);
        }
        estimate_.e = lateral_error;
        prev_e_[1] = prev_e_[0];
        prev_e_[0] = lateral_error;
        samples_ = std::min (samples_ + 1, 2);
        return estimate_;
    }

    double PreviewSteering::desired_steer (const vehicle::VehicleState &vehicle, const path::BezierPath &path,
                                           const PreviewParams &prev, const vehicle::VehicleParams &vp, double u_hint, double dt,
                                           path::TravelDirection direction)
    {
        const auto proj = path::project_lateral (path, vehicle.position (), u_hint);
        last_u_ = proj.u_star;
        const ErrorEstimate est = observe (proj.lateral_error, dt);
        const double kappa = path::eval_path (path, proj.u_star).signed_curvature;
        return preview_command (est, kappa, prev, vp, direction);
    }

    MuscleModel::MuscleModel (const DriverParams &params, double control_dt, double initial_theta, std::uint64_t seed)
        : params_ (params), noise_ (seed)
    {
        params.validate ();
        const auto ticks = static_cast<std::size_t> (std::llround (params.reaction_delay / control_dt));
        buffer_.assign (ticks + 1, initial_theta);
    }

    MuscleOutput MuscleModel::muscle_torque (double theta_d_driver, const vehicle::SteeringColumn &column)
    {
        buffer_[head_] = theta_d_driver;
        head_ = (head_ + 1) % buffer_.size ();
        const double delayed = buffer_[head_];
        const double n = params_.torque_noise_std * noise_ ();
        MuscleOutput out;
        out.tau_msl = params_.neuromuscular_gain * (delayed - column.theta) + n;
        out.tau_c = out.tau_msl - params_.neuromuscular_damping * column.theta_dot;
        return out;
    }

    double skill_update (double skill, double rms_e, double rate, double e_ref)
    {
        if (!(rate >= 0.0))
            throw ConfigError ("learning rate must be >= 0");
        if (!(e_ref > 0.0))
            throw ConfigError ("e_ref must be > 0");
        return std::clamp (skill + rate * std::max (0.0, 1.0 - rms_e / e_ref), 0.0, 1.0);
    }
} // namespace hscpark::driver
