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

#include <hscpark/planner.hpp>

#include <hscpark/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace hscpark::path
{
    namespace
    {
        constexpr int kGrid = 32;
        constexpr int kFallbackGrid = 128;
        constexpr int kPatternSeeds = 4;
        constexpr double kLowerFraction = 0.01;
        constexpr double kUpperFactor = 3.0;
        constexpr double kLengthTie = 1e-9;

        struct Candidate
        {
            double m0 = 0.0;
            double m1 = 0.0;
            double length = std::numeric_limits<double>::infinity ();

            [[nodiscard]] bool feasible () const noexcept { return std::isfinite (length); }
        };

        bool better (const Candidate &a, const Candidate &b) noexcept
        {
            if (!a.feasible ())
                return false;
            if (!b.feasible ())
                return true;
            const double tie = kLengthTie * std::max (a.length, b.length);
            if (std::abs (a.length - b.length) > tie)
                return a.length < b.length;
            return a.m0 + a.m1 < b.m0 + b.m1;
        }

        class Search
        {
          public:
            Search (const Pose2D &start, const Pose2D &goal, const PlannerConfig &cfg)
                : start_ (start), goal_ (goal), cfg_ (cfg), kappa_max_ (1.0 / cfg.min_turn_radius)
            {
                const double d = distance (start.position (), goal.position ());
                lo_ = kLowerFraction * d;
                hi_ = kUpperFactor * d;
            }

            Candidate evaluate (double m0, double m1) const
            {
                Candidate c{m0, m1};
                const BezierPath p = tangent_constrained_cubic (start_, goal_, m0, m1, cfg_.direction);
                if (max_sampled_curvature (p, cfg_.curvature_samples) <= kappa_max_)
                    c.length = path_length (p);
                return c;
            }

            std::vector<Candidate> grid (int n) const
            {
                std::vector<Candidate> out;
                out.reserve (static_cast<std::size_t> (n * n));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        out.push_back (evaluate (level (i, n), level (j, n)));
                return out;
            }

            Candidate pattern_search (Candidate best, double step) const
            {
                static constexpr std::array<std::array<int, 2>, 8> dirs{
                    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
                const double min_step = 1e-7 * hi_;
                while (step > min_step)
                {
                    bool moved = false;
                    for (const auto &d : dirs)
                    {
                        const double m0 = std::clamp (best.m0 + d[0] * step, lo_, hi_);
                        const double m1 = std::clamp (best.m1 + d[1] * step, lo_, hi_);
                        if (m0 == best.m0 && m1 == best.m1)
                            continue;
                        const Candidate c = evaluate (m0, m1);
                        if (better (c, best))
                        {
                            best = c;
                            moved = true;
                        }
                    }
                    if (!moved)
                        step *= 0.5;
                }
                return best;
            }

            double level (int i, int n) const noexcept { return lo_ + (hi_ - lo_) * (i + 1) / n; }
            double span () const noexcept { return hi_ - lo_; }

          private:
            Pose2D start_;
            Pose2D goal_;
            PlannerConfig cfg_;
            double kappa_max_;
            double lo_ = 0.0;
            double hi_ = 0.0;
        };
    } // namespace

    void PlannerConfig::validate () const
    {
        if (!(min_turn_radius > 0.0) || !std::isfinite (min_turn_radius))
            throw ConfigError ("min_turn_radius must be > 0");
        if (curvature_samples < 64)
            throw ConfigError ("curvature_samples must be >= 64");
        if (!(length_tolerance > 0.0))
            throw ConfigError ("length_tolerance must be > 0");
    }

    Vec2 travel_tangent (const Pose2D &pose, TravelDirection direction) noexcept
    {
        const Vec2 facing = unit_from_angle (pose.heading);
        return direction == TravelDirection::Reverse ? -1.0 * facing : facing;
    }

    BezierPath tangent_constrained_cubic (const Pose2D &start, const Pose2D &goal, double m0, double m1,
                                          TravelDirection direction) noexcept
    {
        const Vec2 p0 = start.position ();
        const Vec2 p3 = goal.position ();
        return BezierPath{{p0, p0 + m0 * travel_tangent (start, direction), p3 - m1 * travel_tangent (goal, direction), p3}};
    }

    BezierPath plan_parking_path (const Pose2D &start, const Pose2D &goal, const PlannerConfig &cfg)
    {
        cfg.validate ();
        if (!std::isfinite (start.heading) || !std::isfinite (goal.heading))
            throw ConfigError ("pose heading must be finite");
        if (distance (start.position (), goal.position ()) <= 0.0)
            throw ConfigError ("start and goal positions coincide");

        const Search search (start, goal, cfg);
        int n = kGrid;
        auto cells = search.grid (n);
        if (std::none_of (cells.begin (), cells.end (), [] (const Candidate &c) { return c.feasible (); }))
        {
            n = kFallbackGrid;
            cells = search.grid (n);
        }
        std::sort (cells.begin (), cells.end (), better);
        if (!cells.front ().feasible ())
            throw Infeasible ("no tangent magnitudes satisfy the minimum turning radius " +
                              std::to_string (cfg.min_turn_radius) + " m");

        Candidate best = cells.front ();
        const double step = search.span () / n;
        for (int k = 0; k < kPatternSeeds && k < static_cast<int> (cells.size ()) && cells[k].feasible (); ++k)
        {
            const Candidate refined = search.pattern_search (cells[k], step);
            if (better (refined, best))
                best = refined;
        }
        return tangent_constrained_cubic (start, goal, best.m0, best.m1, cfg.direction);
    }

    TangentMagnitudes tangent_magnitudes (const BezierPath &path) noexcept
    {
        const auto &p = path.control_points;
        return {distance (p[0], p[1]), distance (p[2], p[3])};
    }
} // namespace hscpark::path
