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

#include <hscpark/config.hpp>
#include <hscpark/error.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

using namespace hscpark;
using config::parse_run_config;

namespace
{
    std::string error_of (std::string_view text)
    {
        try
        {
            (void)parse_run_config (text, "t.cfg");
        }
        catch (const ConfigError &e)
        {
            return e.what ();
        }
        return {};
    }
}

TEST_SUITE ("config")
{
    TEST_CASE ("empty text gives the canonical defaults")
    {
        const auto c = parse_run_config ("");
        const auto s = sim::canonical_scenario ();
        CHECK (c.scenario.goal.x == s.goal.x);
        CHECK (c.scenario.goal.heading == s.goal.heading);
        CHECK (c.driver_skill == 1.0);
        CHECK_FALSE (c.intent_offset.has_value ());
        CHECK (c.condition == assist::Condition::A);
    }

    TEST_CASE ("format and parse round-trip")
    {
        config::RunConfig c;
        c.scenario.start = {1.25, -0.5, 0.1};
        c.scenario.seed = 99;
        c.driver_skill = 0.375;
        c.intent_offset = -0.75;
        c.condition = assist::Condition::B;
        c.experiment.drivers_per_condition = 4;
        c.experiment.learning.enabled = true;
        c.experiment.conditions = {assist::Condition::C, assist::Condition::A};
        const std::string text = config::format_run_config (c);
        const auto back = parse_run_config (text);
        CHECK (config::format_run_config (back) == text);
        CHECK (back.scenario.start.heading == doctest::Approx (0.1).epsilon (1e-8));
        CHECK (back.scenario.seed == 99);
        CHECK (*back.intent_offset == -0.75);
        CHECK (back.condition == assist::Condition::B);
        REQUIRE (back.experiment.conditions.size () == 2);
        CHECK (back.experiment.conditions[0] == assist::Condition::C);
        CHECK (back.experiment.learning.enabled);
    }

    TEST_CASE ("angles are read in degrees")
    {
        const auto c = parse_run_config ("[scenario]\ngoal_heading = 45\n");
        CHECK (c.scenario.goal.heading == doctest::Approx (std::numbers::pi / 4.0).epsilon (1e-15));
    }

    TEST_CASE ("comments and blank lines are ignored")
    {
        const auto c = parse_run_config ("# header\n\n[driver]   # trailing\n  skill = 0.25  # mid\n");
        CHECK (c.driver_skill == 0.25);
    }

    TEST_CASE ("diagnostics name the line")
    {
        CHECK (error_of ("[nope]\n").find ("t.cfg:1:") != std::string::npos);
        CHECK (error_of ("\n[driver]\nbogus = 1\n").find ("t.cfg:3: unknown key 'bogus'") != std::string::npos);
        CHECK (error_of ("[driver]\nskill = 1\nskill = 0\n").find ("t.cfg:3:") != std::string::npos);
        CHECK (error_of ("[driver]\nskill = 1\n[driver]\nskill = 0\n").find ("repeated") != std::string::npos);
        CHECK (error_of ("skill = 1\n").find ("outside any section") != std::string::npos);
        CHECK (error_of ("[driver]\nskill\n").find ("t.cfg:2:") != std::string::npos);
        CHECK (error_of ("[driver]\nskill =\n").find ("missing value") != std::string::npos);
        CHECK (error_of ("[driver\n").find ("malformed") != std::string::npos);
        CHECK (error_of ("[scenario]\ndt = abc\n").find ("t.cfg:2: dt") != std::string::npos);
        CHECK (error_of ("[scenario]\ndt = -1\n").find ("> 0") != std::string::npos);
        CHECK (error_of ("[assist]\ncondition = D\n").find ("expected A, B or C") != std::string::npos);
        CHECK (error_of ("[experiment]\nconditions = A, A\n").find ("listed twice") != std::string::npos);
        CHECK (error_of ("[planner]\ncurvature_samples = 10\n").find (">= 64") != std::string::npos);
        CHECK (error_of ("[experiment]\nlearning_enabled = yes\n").find ("true or false") != std::string::npos);
    }

    TEST_CASE ("cross-field validation runs after parsing")
    {
        CHECK_FALSE (error_of ("[driver]\nskill = 1.5\n").empty ());
        CHECK_FALSE (error_of ("[experiment]\nskill_min = 0.8\nskill_max = 0.2\n").empty ());
        CHECK_FALSE (error_of ("[scenario]\ndt = 0.02\ncontrol_dt = 0.01\n").empty ());
    }

    TEST_CASE ("intent offset accepts none")
    {
        CHECK_FALSE (parse_run_config ("[driver]\nintent_offset = none\n").intent_offset.has_value ());
        CHECK (*parse_run_config ("[driver]\nintent_offset = 1\n").intent_offset == 1.0);
    }

    TEST_CASE ("experiment plan carries the file's scenario and anchors")
    {
        const auto c = parse_run_config ("[scenario]\ngoal_x = -15\n[driver.expert]\nerror_gain = 12\n[assist]\npreview_time = 1.2\n");
        const auto p = c.experiment_plan ();
        CHECK (p.scenario.goal.x == -15.0);
        CHECK (p.anchors.expert.preview.error_gain == 12.0);
        CHECK (p.assist_preview.preview_time == 1.2);
        CHECK (c.assist_config ().gain_cs == 0.0);
        CHECK (parse_run_config ("[assist]\ncondition = C\n").assist_config ().gain_cs == 1.0);
    }

    TEST_CASE ("load from file")
    {
        const auto dir = std::filesystem::temp_directory_path () / "hscpark_config_test";
        std::filesystem::create_directories (dir);
        const auto file = dir / "x.cfg";
        {
            std::ofstream f (file);
            f << "[driver]\nskill = 0.5\nbad = 1\n";
        }
        try
        {
            (void)config::load_run_config (file);
            FAIL ("expected ConfigError");
        }
        catch (const ConfigError &e)
        {
            CHECK (std::string (e.what ()).find ("x.cfg:3:") != std::string::npos);
        }
        CHECK_THROWS_AS ((void)config::load_run_config (dir / "missing.cfg"), ConfigError);
        std::filesystem::remove_all (dir);
    }
}
