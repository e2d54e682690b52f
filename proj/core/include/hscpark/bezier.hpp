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
#include <string>
#include <string_view>

#include <hscpark/geometry.hpp>

namespace hscpark::path
{
    /// Cubic Bezier defined by its control polygon P0..P3 (meters).
    struct BezierPath
    {
        std::array<Vec2, 4> control_points{};

        [[nodiscard]] Vec2 start () const noexcept { return control_points[0]; }
        [[nodiscard]] Vec2 goal () const noexcept { return control_points[3]; }

        [[nodiscard]] Vec2 point (double u) const noexcept;
        [[nodiscard]] Vec2 first_derivative (double u) const noexcept;
        [[nodiscard]] Vec2 second_derivative (double u) const noexcept;

        /// Copy with every control point translated by `offset`.
        [[nodiscard]] BezierPath translated (Vec2 offset) const noexcept;
        /// Copy with every control point scaled about the origin.
        [[nodiscard]] BezierPath scaled (double factor) const noexcept;

        friend bool operator== (const BezierPath &, const BezierPath &) = default;
    };

    /// Result of evaluating a path at one parameter value.
    struct PathPoint
    {
        Vec2 point;
        Vec2 tangent;            ///< unit vector along increasing u
        double curvature;        ///< |x'y'' - y'x''| / |B'|^3
        double signed_curvature; ///< positive when the curve bends left of the tangent
    };

    /// Throws DegenerateDerivative when |B'(u)| < 1e-12 and std::domain_error for u outside [0,1].
    [[nodiscard]] PathPoint eval_path (const BezierPath &path, double u);

    /// Curvature without the degenerate-derivative check; returns +inf at a cusp.
    [[nodiscard]] double curvature_at (const BezierPath &path, double u) noexcept;

    /// Arc length by adaptive Gauss-Kronrod quadrature of |B'(u)|, relative error <= 1e-8.
    [[nodiscard]] double path_length (const BezierPath &path);
    /// Arc length over [0, u].
    [[nodiscard]] double path_length (const BezierPath &path, double u);

    /// Largest curvature over `samples` Chebyshev-Lobatto points in [0,1].
    [[nodiscard]] double max_sampled_curvature (const BezierPath &path, int samples) noexcept;

    struct PathProjection
    {
        double u_star = 0.0;
        /// Positive when the point lies left of the path, looking along increasing u.
        double lateral_error = 0.0;
        double arc_position = 0.0;
    };

    /// Closest point on the path. The local minimum reached from `u_hint` competes with
    /// minima bracketed by a coarse scan; ties go to the candidate nearest the hint.
    [[nodiscard]] PathProjection project_onto_path (const BezierPath &path, Vec2 point, double u_hint);

    /// Same as project_onto_path but skips the arc-length quadrature (arc_position = 0).
    [[nodiscard]] PathProjection project_lateral (const BezierPath &path, Vec2 point, double u_hint);

    /// `p0x,p0y,p1x,p1y,p2x,p2y,p3x,p3y` with 9 significant digits.
    [[nodiscard]] std::string format_path_record (const BezierPath &path);
    inline constexpr std::string_view path_record_header = "p0x,p0y,p1x,p1y,p2x,p2y,p3x,p3y";
    /// Parses one record row; throws ConfigError on malformed input.
    [[nodiscard]] BezierPath parse_path_record (std::string_view row);
} // namespace hscpark::path
