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
#include <hscpark/experiment.hpp>

#include <cmath>
#include <map>
#include <random>

using namespace hscpark;
using namespace hscpark::experiment;

namespace
{
    ExperimentPlan small_plan ()
    {
        ExperimentPlan p;
        p.trials = {2, 2, 1, 1};
        p.drivers_per_condition = 3;
        p.threads = 2;
        return p;
    }

    double two_pass_correlation (const std::vector<DeltaPair> &rows)
    {
        double mx = 0.0, my = 0.0;
        for (const auto &r : rows)
        {
            mx += r.during;
            my += r.after;
        }
        mx /= static_cast<double> (rows.size ());
        my /= static_cast<double> (rows.size ());
        double num = 0.0, dx = 0.0, dy = 0.0;
        for (const auto &r : rows)
        {
            num += (r.during - mx) * (r.after - my);
            dx += (r.during - mx) * (r.during - mx);
            dy += (r.after - my) * (r.after - my);
        }
        return num / std::sqrt (dx * dy);
    }
}

TEST_SUITE ("experiment")
{
    TEST_CASE ("correlation examples")
    {
        const std::vector<DeltaPair> up{{0.0, 1.0}, {1.0, 3.0}, {2.0, 5.0}, {3.0, 7.0}};
        const std::vector<DeltaPair> down{{0.0, 1.0}, {1.0, -1.0}, {2.0, -3.0}};
        CHECK (*correlate_deltas (up) == doctest::Approx (1.0).epsilon (1e-15));
        CHECK (*correlate_deltas (down) == doctest::Approx (-1.0).epsilon (1e-15));
        CHECK_FALSE (correlate_deltas (std::vector<DeltaPair>{{1.0, 2.0}, {2.0, 3.0}}).has_value ());
        CHECK_FALSE (correlate_deltas (std::vector<DeltaPair>{{1.0, 2.0}, {1.0, 3.0}, {1.0, 4.0}}).has_value ());

        std::mt19937_64 rng (4);
        std::normal_distribution<double> n;
        for (int k = 0; k < 20; ++k)
        {
            std::vector<DeltaPair> rows (25);
            for (auto &r : rows)
                r = {n (rng), n (rng)};
            const auto r = correlate_deltas (rows);
            REQUIRE (r.has_value ());
            CHECK (std::abs (*r - two_pass_correlation (rows)) < 1e-12);
            CHECK (std::abs (*r) <= 1.0);
        }
    }

    TEST_CASE ("aggregate uses the sample standard deviation")
    {
        const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
        const auto a = aggregate (v);
        CHECK (a.mean == 2.5);
        CHECK (a.stddev == doctest::Approx (std::sqrt (5.0 / 3.0)));
        CHECK (aggregate (std::vector<double>{7.0}).stddev == 0.0);
    }

    TEST_CASE ("plan validation")
    {
        auto p = small_plan ();
        p.trials.during = 0;
        CHECK_THROWS_AS (p.validate (), ConfigError);
        p = small_plan ();
        p.drivers_per_condition = 0;
        CHECK_THROWS_AS (p.validate (), ConfigError);
        p = small_plan ();
        p.conditions.clear ();
        CHECK_THROWS_AS (p.validate (), ConfigError);
    }

    TEST_CASE ("default plan runs 26 trials per driver in protocol order")
    {
        ExperimentPlan p;
        p.conditions = {assist::Condition::B};
        p.drivers_per_condition = 1;
        const auto report = run_experiment (p);
        REQUIRE (report.conditions.size () == 1);
        CHECK (report.trial_count () == 26);
        const auto &c = report.conditions[0];
        int expected_first = 1;
        for (std::size_t i = 0; i < kPhases.size (); ++i)
        {
            const auto &rows = c.phases[i].rows;
            REQUIRE (rows.size () == static_cast<std::size_t> (p.trials.of (kPhases[i])));
            CHECK (rows.front ().trial == expected_first);
            expected_first += static_cast<int> (rows.size ());
        }
        CHECK_FALSE (c.delta_correlation.has_value ());
    }

    TEST_CASE ("assist is wired only into the during phase of B and C")
    {
        const auto report = run_experiment (small_plan ());
        CHECK (report.failures.empty ());
        for (const auto &c : report.conditions)
            for (const auto &p : c.phases)
                for (const auto &r : p.rows)
                {
                    const bool expect = r.phase == Phase::During && c.condition != assist::Condition::A;
                    CHECK (r.assisted == expect);
                    CHECK ((r.max_abs_tau_das > 0.0) == expect);
                    if (!expect)
                        CHECK (r.metrics.mean_w_das == 0.0);
                }
    }

    TEST_CASE ("condition A: fixed-start phases agree and no assist torque anywhere")
    {
        ExperimentPlan p;
        p.conditions = {assist::Condition::A};
        p.drivers_per_condition = 4;
        const auto report = run_experiment (p);
        const auto &c = report.conditions[0];
        CHECK_FALSE (report.correlation_applicable);
        for (const auto &ph : c.phases)
            for (const auto &r : ph.rows)
                CHECK (r.max_abs_tau_das == 0.0);
        // during and after_fixed share the fixed start; they differ only in seeded noise
        const double during = c.phases[1].rms_e.mean;
        const double after = c.phases[2].rms_e.mean;
        CHECK (std::abs (during - after) < 0.1 * during);
    }

    TEST_CASE ("novice drivers under full assist err less during assist than before")
    {
        ExperimentPlan p;
        p.conditions = {assist::Condition::C};
        p.skill_max = 0.0;
        const auto report = run_experiment (p);
        const auto &c = report.conditions[0];
        CHECK (c.phases[1].rms_e.mean < c.phases[0].rms_e.mean);
    }

    TEST_CASE ("seeds are isolated per phase")
    {
        auto a = small_plan ();
        auto b = small_plan ();
        b.trials.after_self = 3;
        const auto ra = run_experiment (a);
        const auto rb = run_experiment (b);
        for (std::size_t ci = 0; ci < ra.conditions.size (); ++ci)
            for (std::size_t pi = 0; pi < 3; ++pi)
            {
                const auto &x = ra.conditions[ci].phases[pi].rows;
                const auto &y = rb.conditions[ci].phases[pi].rows;
                REQUIRE (x.size () == y.size ());
                for (std::size_t k = 0; k < x.size (); ++k)
                    CHECK (x[k].metrics.rms_e == y[k].metrics.rms_e);
            }
    }

    TEST_CASE ("results do not depend on the thread count")
    {
        auto one = small_plan ();
        one.threads = 1;
        auto four = small_plan ();
        four.threads = 4;
        CHECK (format_trial_csv (run_experiment (one)) == format_trial_csv (run_experiment (four)));
    }

    TEST_CASE ("per-trial CSV reproduces every aggregate exactly")
    {
        auto p = small_plan ();
        p.learning.enabled = true;
        const auto report = run_experiment (p);
        const auto rows = parse_trial_csv (format_trial_csv (report));
        CHECK (rows.size () == report.trial_count ());
        for (const auto &c : report.conditions)
        {
            std::vector<TrialRow> mine;
            for (const auto &r : rows)
                if (r.condition == c.condition)
                    mine.push_back (r);
            const auto again = summarize_condition (c.condition, mine);
            for (std::size_t i = 0; i < 4; ++i)
            {
                CHECK (again.phases[i].rms_e.mean == c.phases[i].rms_e.mean);
                CHECK (again.phases[i].rms_e.stddev == c.phases[i].rms_e.stddev);
                CHECK (again.phases[i].mean_abs_tau_c.mean == c.phases[i].mean_abs_tau_c.mean);
                CHECK (again.phases[i].mean_w_c.mean == c.phases[i].mean_w_c.mean);
                CHECK (again.phases[i].mean_w_das.mean == c.phases[i].mean_w_das.mean);
            }
            REQUIRE (again.deltas.size () == c.deltas.size ());
            for (std::size_t k = 0; k < c.deltas.size (); ++k)
            {
                CHECK (again.deltas[k].delta_during == c.deltas[k].delta_during);
                CHECK (again.deltas[k].delta_after == c.deltas[k].delta_after);
            }
            CHECK (again.delta_correlation == c.delta_correlation);
        }
        CHECK (format_summary (report).find ("learning rule of the synthetic driver") != std::string::npos);
    }

    TEST_CASE ("single driver gives an undefined correlation")
    {
        auto p = small_plan ();
        p.drivers_per_condition = 1;
        const auto report = run_experiment (p);
        CHECK (report.correlation_applicable);
        CHECK_FALSE (report.delta_correlation.has_value ());
        CHECK (format_summary (report).find ("undefined") != std::string::npos);
    }

    TEST_CASE ("per-trial CSV parsing rejects bad input")
    {
        CHECK_THROWS_AS ((void)parse_trial_csv ("a,b\n"), ConfigError);
        const std::string head (trial_csv_header);
        CHECK_THROWS_AS ((void)parse_trial_csv (head + "\nZ,1,before,1,0.1,1,0,0,true,20\n"), ConfigError);
        CHECK_THROWS_AS ((void)parse_trial_csv (head + "\nA,1,before,1,0.1,1,0,0,maybe,20\n"), ConfigError);
        CHECK (parse_trial_csv (head + "\nA,1,before,1,0.1,1,0,0,true,20\n").size () == 1);
    }
}
