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

#include <hscpark/bezier.hpp>
#include <hscpark/geometry.hpp>

namespace hscpark::path
{
    /// Which way the vehicle moves along the path relative to its heading.
    enum class TravelDirection
    {
        Reverse, ///< tail first: path tangent = heading + pi
        Forward, ///< nose first: path tangent = heading
    };

    struct PlannerConfig
    {
        double min_turn_radius = 4.5; ///< meters
        int curvature_samples = 256;  ///< Chebyshev-Lobatto samples for the curvature check
        double length_tolerance = 1e-3;
        TravelDirection direction = TravelDirection::Reverse;

        /// Throws ConfigError when an invariant fails.
        void validate () const;
    };

    /// Unit path tangent implied by a pose and the travel direction.
    [[nodiscard]] Vec2 travel_tangent (const Pose2D &pose, TravelDirection direction) noexcept;

    /// Cubic with P1 = P0 + m0 t0 and P2 = P3 - m1 t1.
    [[nodiscard]] BezierPath tangent_constrained_cubic (const Pose2D &start, const Pose2D &goal, double m0, double m1,
                                                        TravelDirection direction) noexcept;

    /// Shortest tangent-constrained cubic from `start` to `goal` whose sampled curvature stays within
    /// 1 / min_turn_radius. Magnitudes are searched on [0.01 d, 3 d] with d the start-goal distance:
    /// a 32x32 grid, then pattern search from the best grid cells. Ties go to the smaller m0 + m1.
    /// Throws Infeasible when nothing in the domain meets the bound.
    [[nodiscard]] BezierPath plan_parking_path (const Pose2D &start, const Pose2D &goal, const PlannerConfig &cfg);

    /// The two tangent magnitudes of a plan, recovered from its control polygon.
    struct TangentMagnitudes
    {
        double m0 = 0.0;
        double m1 = 0.0;
    };
    [[nodiscard]] TangentMagnitudes tangent_magnitudes (const BezierPath &path) noexcept;
} // namespace hscpark::path
