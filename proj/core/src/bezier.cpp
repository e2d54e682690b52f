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

#include <hscpark/bezier.hpp>

#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hscpark::path
{
    namespace
    {
        constexpr double kMinDerivative = 1e-12;
        constexpr double kStationarityTol = 1e-10; // on |d/du dist^2|
        constexpr int kProjectionScan = 64;

        // (B(u) - p) . B'(u), i.e. half the derivative of the squared distance.
        double half_dist2_slope (const BezierPath &path, Vec2 p, double u) noexcept
        {
            return dot (path.point (u) - p, path.first_derivative (u));
        }

        double half_dist2_curvature (const BezierPath &path, Vec2 p, double u) noexcept
        {
            const Vec2 d1 = path.first_derivative (u);
            return dot (d1, d1) + dot (path.point (u) - p, path.second_derivative (u));
        }

        // Root of the slope inside [lo, hi] where slope(lo) < 0 < slope(hi).
        double refine_minimum (const BezierPath &path, Vec2 p, double lo, double hi, double seed) noexcept
        {
            double u = std::clamp (seed, lo, hi);
            for (int iter = 0; iter < 200; ++iter)
            {
                const double g = half_dist2_slope (path, p, u);
                if (std::abs (2.0 * g) < kStationarityTol)
                    return u;
                if (g < 0.0)
                    lo = u;
                else
                    hi = u;
                if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon ())
                    return u;
                const double h = half_dist2_curvature (path, p, u);
                double next = (h > 0.0) ? u - g / h : lo - 1.0;
                if (!(next > lo && next < hi))
                    next = 0.5 * (lo + hi);
                u = next;
            }
            return u;
        }

        PathProjection project_impl (const BezierPath &path, Vec2 p, double u_hint, bool with_arc)
        {
            u_hint = std::clamp (u_hint, 0.0, 1.0);

            std::vector<double> us;
            us.reserve (kProjectionScan + 2);
            for (int i = 0; i <= kProjectionScan; ++i)
                us.push_back (static_cast<double> (i) / kProjectionScan);
            us.push_back (u_hint);
            std::sort (us.begin (), us.end ());
            us.erase (std::unique (us.begin (), us.end ()), us.end ());

            std::vector<double> slope (us.size ());
            for (std::size_t i = 0; i < us.size (); ++i)
                slope[i] = half_dist2_slope (path, p, us[i]);

            std::vector<double> candidates;
            if (slope.front () >= 0.0)
                candidates.push_back (0.0);
            if (slope.back () <= 0.0)
                candidates.push_back (1.0);
            for (std::size_t i = 0; i + 1 < us.size (); ++i)
            {
                if (slope[i] == 0.0)
                    candidates.push_back (us[i]);
                else if (slope[i] < 0.0 && slope[i + 1] > 0.0)
                {
                    const double seed = (u_hint > us[i] && u_hint < us[i + 1]) ? u_hint : 0.5 * (us[i] + us[i + 1]);
                    candidates.push_back (refine_minimum (path, p, us[i], us[i + 1], seed));
                }
            }

            double best_u = u_hint;
            double best_d2 = std::numeric_limits<double>::infinity ();
            for (double u : candidates)
            {
                const Vec2 diff = path.point (u) - p;
                const double d2 = dot (diff, diff);
                if (!std::isfinite (best_d2))
                {
                    best_d2 = d2;
                    best_u = u;
                    continue;
                }
                const bool tie = std::abs (d2 - best_d2) <= 1e-12 * std::max (1.0, best_d2);
                if ((d2 < best_d2 && !tie) || (tie && std::abs (u - u_hint) < std::abs (best_u - u_hint)))
                {
                    best_d2 = std::min (d2, best_d2);
                    best_u = u;
                }
            }

            const Vec2 foot = path.point (best_u);
            const Vec2 offset = p - foot;
            const double dist = norm (offset);
            Vec2 tangent = path.first_derivative (best_u);
            if (norm (tangent) < kMinDerivative)
                tangent = path.goal () - path.start ();
            const double side = cross (tangent, offset);

            PathProjection proj;
            proj.u_star = best_u;
            proj.lateral_error = side < 0.0 ? -dist : dist;
            proj.arc_position = with_arc ? path_length (path, best_u) : 0.0;
            return proj;
        }
    } // namespace

    Vec2 BezierPath::point (double u) const noexcept
    {
        const double v = 1.0 - u;
        const double b0 = v * v * v;
        const double b1 = 3.0 * u * v * v;
        const double b2 = 3.0 * u * u * v;
        const double b3 = u * u * u;
        const auto &p = control_points;
        return {b0 * p[0].x + b1 * p[1].x + b2 * p[2].x + b3 * p[3].x, b0 * p[0].y + b1 * p[1].y + b2 * p[2].y + b3 * p[3].y};
    }

    Vec2 BezierPath::first_derivative (double u) const noexcept
    {
        const double v = 1.0 - u;
        const auto &p = control_points;
        return 3.0 * v * v * (p[1] - p[0]) + 6.0 * u * v * (p[2] - p[1]) + 3.0 * u * u * (p[3] - p[2]);
    }

    Vec2 BezierPath::second_derivative (double u) const noexcept
    {
        const auto &p = control_points;
        const Vec2 a = p[2] - 2.0 * p[1] + p[0];
        const Vec2 b = p[3] - 2.0 * p[2] + p[1];
        return 6.0 * (1.0 - u) * a + 6.0 * u * b;
    }

    BezierPath BezierPath::translated (Vec2 offset) const noexcept
    {
        BezierPath out = *this;
        for (auto &cp : out.control_points)
            cp = cp + offset;
        return out;
    }

    BezierPath BezierPath::scaled (double factor) const noexcept
    {
        BezierPath out = *this;
        for (auto &cp : out.control_points)
            cp = factor * cp;
        return out;
    }

    PathPoint eval_path (const BezierPath &path, double u)
    {
        if (!(u >= 0.0 && u <= 1.0))
            throw std::domain_error ("eval_path: u outside [0,1]");
        const Vec2 d1 = path.first_derivative (u);
        const double speed = norm (d1);
        if (speed < kMinDerivative)
            throw DegenerateDerivative ("first derivative vanishes at u=" + csv::format_number (u));
        const Vec2 d2 = path.second_derivative (u);
        const double k = cross (d1, d2) / (speed * speed * speed);
        return {path.point (u), (1.0 / speed) * d1, std::abs (k), k};
    }

    double curvature_at (const BezierPath &path, double u) noexcept
    {
        const Vec2 d1 = path.first_derivative (u);
        const double speed = norm (d1);
        if (speed < kMinDerivative)
            return std::numeric_limits<double>::infinity ();
        return std::abs (cross (d1, path.second_derivative (u))) / (speed * speed * speed);
    }

    double path_length (const BezierPath &path, double u)
    {
        if (u <= 0.0)
            return 0.0;
        using boost::math::quadrature::gauss_kronrod;
        auto speed = [&path] (double s) { return norm (path.first_derivative (s)); };
        return gauss_kronrod<double, 31>::integrate (speed, 0.0, std::min (u, 1.0), 20, 1e-12);
    }

    double path_length (const BezierPath &path) { return path_length (path, 1.0); }

    double max_sampled_curvature (const BezierPath &path, int samples) noexcept
    {
        samples = std::max (samples, 2);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i)
        {
            const double u = 0.5 - 0.5 * std::cos (std::numbers::pi * i / (samples - 1));
            worst = std::max (worst, curvature_at (path, std::clamp (u, 0.0, 1.0)));
        }
        return worst;
    }

    PathProjection project_onto_path (const BezierPath &path, Vec2 point, double u_hint) { return project_impl (path, point, u_hint, true); }

    PathProjection project_lateral (const BezierPath &path, Vec2 point, double u_hint) { return project_impl (path, point, u_hint, false); }

    std::string format_path_record (const BezierPath &path)
    {
        std::string row;
        for (std::size_t i = 0; i < path.control_points.size (); ++i)
        {
            if (i)
                row += ',';
            row += csv::format_number (path.control_points[i].x);
            row += ',';
            row += csv::format_number (path.control_points[i].y);
        }
        return row;
    }

    BezierPath parse_path_record (std::string_view row)
    {
        const auto fields = csv::split_line (row);
        if (fields.size () != 8)
            throw ConfigError ("path record needs 8 fields, found " + std::to_string (fields.size ()));
        BezierPath path;
        for (std::size_t i = 0; i < 4; ++i)
        {
            path.control_points[i].x = csv::parse_number (fields[2 * i], "control point x");
            path.control_points[i].y = csv::parse_number (fields[2 * i + 1], "control point y");
        }
        return path;
    }
} // namespace hscpark::path
