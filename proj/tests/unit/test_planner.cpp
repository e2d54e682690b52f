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

#include <doctest.h>

#include <hscpark/error.hpp>
#include <hscpark/planner.hpp>
#include <hscpark/sim.hpp>

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace hscpark;
using path::TravelDirection;

namespace
{
    constexpr double kPi = std::numbers::pi;

    path::PlannerConfig planner (double r_min, TravelDirection dir = TravelDirection::Reverse)
    {
        path::PlannerConfig cfg;
        cfg.min_turn_radius = r_min;
        cfg.direction = dir;
        return cfg;
    }

    double angle_between (Vec2 a, Vec2 b) { return std::abs (std::atan2 (cross (a, b), dot (a, b))); }

    void check_invariants (const path::BezierPath &p, const Pose2D &s, const Pose2D &g, const path::PlannerConfig &cfg)
    {
        CHECK (p.control_points[0] == s.position ());
        CHECK (p.control_points[3] == g.position ());
        CHECK (angle_between (p.first_derivative (0.0), path::travel_tangent (s, cfg.direction)) < 1e-9);
        CHECK (angle_between (p.first_derivative (1.0), path::travel_tangent (g, cfg.direction)) < 1e-9);
        CHECK (path::max_sampled_curvature (p, cfg.curvature_samples) <= (1.0 + 1e-3) / cfg.min_turn_radius);
    }
}

TEST_SUITE ("planner")
{
    TEST_CASE ("collinear same-heading poses give the straight segment")
    {
        // the vehicle faces -x; forward travel reaches (-10, 0), reverse travel reaches (+10, 0)
        const Pose2D start{0.0, 0.0, kPi};
        for (auto [goal_x, dir] : {std::pair{-10.0, TravelDirection::Forward}, std::pair{10.0, TravelDirection::Reverse}})
        {
            const Pose2D goal{goal_x, 0.0, kPi};
            const auto cfg = planner (4.5, dir);
            const auto p = path::plan_parking_path (start, goal, cfg);
            CHECK (path::path_length (p) == doctest::Approx (10.0).epsilon (1e-9));
            CHECK (path::max_sampled_curvature (p, 256) < 1e-12);
            check_invariants (p, start, goal, cfg);
        }
    }

    TEST_CASE ("canonical scenario matches the 200 x 200 grid oracle")
    {
        const auto sc = sim::canonical_scenario ();
        const auto p = path::plan_parking_path (sc.start, sc.goal, sc.planner);
        check_invariants (p, sc.start, sc.goal, sc.planner);
        const auto o = oracle::grid_search (sc.start.position (), path::travel_tangent (sc.start, sc.planner.direction), sc.goal.position (),
                                            path::travel_tangent (sc.goal, sc.planner.direction), sc.planner.min_turn_radius);
        REQUIRE (o.feasible);
        const double len = path::path_length (p);
        CHECK (std::abs (len - o.length) <= 0.01 * o.length);
        const auto m = path::tangent_magnitudes (p);
        const double d = distance (sc.start.position (), sc.goal.position ());
        // magnitudes agree to 1% of the search range 3d
        CHECK (std::abs (m.m0 - o.m0) <= 0.03 * d);
        CHECK (std::abs (m.m1 - o.m1) <= 0.03 * d);
    }

    TEST_CASE ("infeasible fixtures are rejected and the oracle agrees")
    {
        struct Fixture
        {
            Pose2D start, goal;
        };
        for (const auto &f : {Fixture{{0.0, 0.0, kPi}, {0.0, -1.0, 0.0}}, Fixture{{0.0, 0.0, kPi}, {-6.0, -4.0, kPi / 2.0}}})
        {
            for (auto dir : {TravelDirection::Reverse, TravelDirection::Forward})
            {
                const auto cfg = planner (4.5, dir);
                CHECK_THROWS_AS ((void)path::plan_parking_path (f.start, f.goal, cfg), Infeasible);
                const auto o = oracle::grid_search (f.start.position (), path::travel_tangent (f.start, dir), f.goal.position (),
                                                    path::travel_tangent (f.goal, dir), 4.5, 100);
                CHECK_FALSE (o.feasible);
                CHECK (o.min_max_curvature > 1.0 / 4.5);
            }
        }
    }

    TEST_CASE ("coincident positions and invalid configs are configuration errors")
    {
        CHECK_THROWS_AS ((void)path::plan_parking_path ({1.0, 1.0, 0.0}, {1.0, 1.0, 1.0}, planner (4.5)), ConfigError);
        CHECK_THROWS_AS ((void)path::plan_parking_path ({0.0, 0.0, 0.0}, {-5.0, 0.0, 0.0}, planner (-1.0)), ConfigError);
        auto cfg = planner (4.5);
        cfg.curvature_samples = 10;
        CHECK_THROWS_AS ((void)path::plan_parking_path ({0.0, 0.0, 0.0}, {-5.0, 0.0, 0.0}, cfg), ConfigError);
    }

    TEST_CASE ("mirror symmetry about the x axis")
    {
        const auto cfg = planner (6.0);
        for (auto [gx, gy, gh] : {std::tuple{-12.0, -9.0, kPi / 2.0}, std::tuple{-12.0, 9.0, -kPi / 2.0}, std::tuple{-15.0, -4.0, 0.4}})
        {
            const Pose2D s{0.0, 0.0, 0.0};
            const Pose2D g{gx, gy, gh};
            const auto p = path::plan_parking_path (s, g, cfg);
            const auto q = path::plan_parking_path ({s.x, -s.y, -s.heading}, {g.x, -g.y, -g.heading}, cfg);
            for (int i = 0; i < 4; ++i)
            {
                CHECK (std::abs (p.control_points[i].x - q.control_points[i].x) < 1e-9);
                CHECK (std::abs (p.control_points[i].y + q.control_points[i].y) < 1e-9);
            }
        }
    }

    TEST_CASE ("feasibility is monotone in the minimum turning radius")
    {
        const auto sc = sim::canonical_scenario ();
        for (double r : {12.0, 9.0, 6.0, 4.5, 2.0})
        {
            const auto p = path::plan_parking_path (sc.start, sc.goal, planner (r));
            CHECK (path::max_sampled_curvature (p, 256) <= (1.0 + 1e-3) / r);
        }
        // and a tighter goal that fails at a large radius but passes at a smaller one
        const Pose2D near_goal{-8.0, -7.0, kPi / 2.0};
        CHECK_THROWS_AS ((void)path::plan_parking_path (sc.start, near_goal, planner (12.0)), Infeasible);
        CHECK_NOTHROW ((void)path::plan_parking_path (sc.start, near_goal, planner (6.0)));
    }

    TEST_CASE ("planning is deterministic")
    {
        const auto sc = sim::canonical_scenario ();
        CHECK (path::plan_parking_path (sc.start, sc.goal, sc.planner) == path::plan_parking_path (sc.start, sc.goal, sc.planner));
    }
}
