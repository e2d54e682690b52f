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

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library's numerical routines.

#include <hscpark/bezier.hpp>
#include <hscpark/geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace hscpark::oracle
{
    inline Vec2 bezier_point (const std::array<Vec2, 4> &p, double u)
    {
        const double a = 1.0 - u;
        return a * a * a * p[0] + 3.0 * a * a * u * p[1] + 3.0 * a * u * u * p[2] + u * u * u * p[3];
    }

    inline double polyline_length (const std::array<Vec2, 4> &p, int segments)
    {
        double len = 0.0;
        Vec2 prev = p[0];
        for (int i = 1; i <= segments; ++i)
        {
            const Vec2 q = bezier_point (p, static_cast<double> (i) / segments);
            len += distance (prev, q);
            prev = q;
        }
        return len;
    }

    /// Curvature from the analytic derivatives, sampled uniformly in u.
    inline double max_curvature_uniform (const std::array<Vec2, 4> &p, int samples)
    {
        double worst = 0.0;
        for (int i = 0; i <= samples; ++i)
        {
            const double u = static_cast<double> (i) / samples;
            const double a = 1.0 - u;
            const Vec2 d1 = 3.0 * a * a * (p[1] - p[0]) + 6.0 * a * u * (p[2] - p[1]) + 3.0 * u * u * (p[3] - p[2]);
            const Vec2 d2 = 6.0 * a * (p[2] - 2.0 * p[1] + p[0]) + 6.0 * u * (p[3] - 2.0 * p[2] + p[1]);
            const double speed = std::hypot (d1.x, d1.y);
            if (speed < 1e-12)
                return std::numeric_limits<double>::infinity ();
            worst = std::max (worst, std::abs (d1.x * d2.y - d1.y * d2.x) / (speed * speed * speed));
        }
        return worst;
    }

    struct GridResult
    {
        bool feasible = false;
        double length = 0.0;
        double m0 = 0.0;
        double m1 = 0.0;
        double min_max_curvature = std::numeric_limits<double>::infinity ();
    };

    /// Brute-force search over tangent magnitudes m = k * 3d / n, k = 1..n, with the tangent directions given.
    inline GridResult grid_search (Vec2 start, Vec2 t0, Vec2 goal, Vec2 t1, double r_min, int n = 200, int curvature_samples = 400,
                                   int length_segments = 400)
    {
        GridResult best;
        const double d = distance (start, goal);
        for (int i = 1; i <= n; ++i)
        {
            for (int j = 1; j <= n; ++j)
            {
                const double m0 = 3.0 * d * i / n;
                const double m1 = 3.0 * d * j / n;
                const std::array<Vec2, 4> p{start, start + m0 * t0, goal - m1 * t1, goal};
                const double kappa = max_curvature_uniform (p, curvature_samples);
                best.min_max_curvature = std::min (best.min_max_curvature, kappa);
                if (kappa > (1.0 + 1e-3) / r_min)
                    continue;
                const double len = polyline_length (p, length_segments);
                if (!best.feasible || len < best.length)
                    best = {true, len, m0, m1, best.min_max_curvature};
            }
        }
        return best;
    }

    /// Minimum distance from q to the curve over `samples` + 1 uniform parameters.
    inline double dense_distance (const std::array<Vec2, 4> &p, Vec2 q, int samples)
    {
        double best = std::numeric_limits<double>::infinity ();
        for (int i = 0; i <= samples; ++i)
            best = std::min (best, distance (bezier_point (p, static_cast<double> (i) / samples), q));
        return best;
    }

    struct BicycleState
    {
        double x = 0.0;
        double y = 0.0;
        double psi = 0.0;
    };

    /// Classical RK4 on the kinematic bicycle with constant speed and road-wheel angle.
    inline BicycleState integrate_bicycle (BicycleState s, double v, double delta, double wheelbase, double duration, int steps)
    {
        const double h = duration / steps;
        const double r = std::tan (delta) / wheelbase;
        auto f = [&] (const BicycleState &q) { return BicycleState{v * std::cos (q.psi), v * std::sin (q.psi), v * r}; };
        for (int i = 0; i < steps; ++i)
        {
            const auto k1 = f (s);
            const auto k2 = f ({s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y, s.psi + 0.5 * h * k1.psi});
            const auto k3 = f ({s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y, s.psi + 0.5 * h * k2.psi});
            const auto k4 = f ({s.x + h * k3.x, s.y + h * k3.y, s.psi + h * k3.psi});
            s.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
            s.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
            s.psi += h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
        }
        return s;
    }

    /// Column J th'' = tau - B th' - K th by RK4 with constant tau, no clamp.
    inline std::array<double, 2> integrate_column (double theta, double rate, double tau, double j, double b, double k, double duration,
                                                   int steps)
    {
        const double h = duration / steps;
        auto acc = [&] (double th, double w) { return (tau - b * w - k * th) / j; };
        for (int i = 0; i < steps; ++i)
        {
            const double k1t = rate, k1w = acc (theta, rate);
            const double k2t = rate + 0.5 * h * k1w, k2w = acc (theta + 0.5 * h * k1t, rate + 0.5 * h * k1w);
            const double k3t = rate + 0.5 * h * k2w, k3w = acc (theta + 0.5 * h * k2t, rate + 0.5 * h * k2w);
            const double k4t = rate + h * k3w, k4w = acc (theta + h * k3t, rate + h * k3w);
            theta += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
            rate += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        return {theta, rate};
    }

    /// Windowed average of tau * v over the last `window_samples` intervals ending at sample i,
    /// trapezoid weights written out explicitly.
    inline std::optional<double> windowed_work (std::span<const double> tau, std::span<const double> v, std::size_t i,
                                                std::size_t window_samples, double dt)
    {
        if (i < window_samples)
            return std::nullopt;
        double sum = 0.0;
        for (std::size_t k = i - window_samples; k <= i; ++k)
        {
            const double w = (k == i - window_samples || k == i) ? 0.5 : 1.0;
            sum += w * tau[k] * v[k];
        }
        return sum * dt / (static_cast<double> (window_samples) * dt);
    }

    /// Cooperative-state table as a lookup on the three bands of each axis: below -gamma, dead band, above +gamma.
    inline char table_state (double w_c, double w_das, double g1, double g2)
    {
        auto band = [] (double w, double g) { return w >= g ? 2 : (w <= -g ? 0 : 1); };
        // rows: w_c band (0 negative, 1 dead, 2 positive); columns: w_das band
        static constexpr char table[3][3] = {{'4', 'V', '3'}, {'V', 'V', 'V'}, {'2', 'V', '1'}};
        return table[band (w_c, g1)][band (w_das, g2)];
    }
} // namespace hscpark::oracle
