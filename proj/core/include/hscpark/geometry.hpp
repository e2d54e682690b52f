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

#include <cmath>
#include <numbers>

namespace hscpark
{
    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        friend constexpr Vec2 operator+ (Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
        friend constexpr Vec2 operator- (Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
        friend constexpr Vec2 operator* (double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
        friend constexpr Vec2 operator* (Vec2 a, double s) noexcept { return {s * a.x, s * a.y}; }
        friend constexpr bool operator== (Vec2 a, Vec2 b) noexcept = default;
    };

    [[nodiscard]] constexpr double dot (Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
    [[nodiscard]] constexpr double cross (Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
    [[nodiscard]] inline double norm (Vec2 a) noexcept { return std::hypot (a.x, a.y); }
    [[nodiscard]] inline double distance (Vec2 a, Vec2 b) noexcept { return norm (a - b); }
    [[nodiscard]] inline Vec2 unit_from_angle (double angle) noexcept { return {std::cos (angle), std::sin (angle)}; }
    /// Counterclockwise perpendicular.
    [[nodiscard]] constexpr Vec2 left_normal (Vec2 a) noexcept { return {-a.y, a.x}; }

    /// Wraps an angle into (-pi, pi].
    [[nodiscard]] inline double normalize_angle (double angle) noexcept
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double a = std::remainder (angle, two_pi);
        if (a <= -std::numbers::pi)
            a += two_pi;
        return a;
    }

    /// Smallest signed difference a - b, in (-pi, pi].
    [[nodiscard]] inline double angle_diff (double a, double b) noexcept { return normalize_angle (a - b); }

    /// Planar pose; heading counterclockwise from +x.
    struct Pose2D
    {
        double x = 0.0;
        double y = 0.0;
        double heading = 0.0;

        [[nodiscard]] Vec2 position () const noexcept { return {x, y}; }
        [[nodiscard]] Pose2D normalized () const noexcept { return {x, y, normalize_angle (heading)}; }
    };
} // namespace hscpark
