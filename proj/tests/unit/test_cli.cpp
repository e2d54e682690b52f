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

#include <hscpark/cli/app.hpp>
#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>

#include "oracles.hpp"
#include "traces.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hscpark;
namespace fs = std::filesystem;

namespace
{
    struct Result
    {
        int code = 0;
        std::string out;
        std::string err;
    };

    Result invoke (std::vector<std::string> args)
    {
        std::ostringstream out, err;
        const int code = cli::run (args, out, err);
        return {code, out.str (), err.str ()};
    }

    struct TempDir
    {
        fs::path path;
        explicit TempDir (const std::string &name) : path (fs::temp_directory_path () / ("hscpark_cli_" + name))
        {
            fs::remove_all (path);
            fs::create_directories (path);
        }
        ~TempDir () { fs::remove_all (path); }
        [[nodiscard]] std::string str () const { return path.string (); }
        void write (const std::string &name, const std::string &text) const { std::ofstream (path / name) << text; }
        [[nodiscard]] std::string read (const std::string &name) const
        {
            std::ifstream f (path / name);
            std::stringstream ss;
            ss << f.rdbuf ();
            return ss.str ();
        }
    };


    std::string table_label (char c)
    {
        switch (c)
        {
        case '1':
            return "I";
        case '2':
            return "II";
        case '3':
            return "III";
        case '4':
            return "IV";
        default:
            return "V";
        }
    }

    coop::PseudoWorkConfig sign_flip_config ()
    {
        coop::PseudoWorkConfig c;
        c.window = 0.5;
        c.gamma1_sq = fixture::kSignFlipGamma1Sq;
        c.gamma2_sq = fixture::kSignFlipGamma2Sq;
        return c;
    }
}

TEST_SUITE ("cli")
{
    TEST_CASE ("classify: constant cooperative torques")
    {
        std::string csv = "t,tau_c,tau_das,v_signal\n";
        for (int i = 0; i <= 100; ++i)
            csv += std::to_string (i * 0.01) + ",1,1,1\n";
        const auto table = csv::parse_table (cli::classify_trace (csv, {}));
        const int col = table.column ("state");
        for (std::size_t i = 0; i < table.rows.size (); ++i)
            CHECK (table.rows[i][static_cast<std::size_t> (col)] == (i < 50 ? "" : "I"));
    }

    TEST_CASE ("classify: zero torques are in the dead zone")
    {
        std::string csv = "t,tau_c,tau_das,v_signal\n";
        for (int i = 0; i <= 80; ++i)
            csv += std::to_string (i * 0.01) + ",0,0,3\n";
        const auto table = csv::parse_table (cli::classify_trace (csv, {}));
        CHECK (table.rows.back ().back () == "V");
    }

    TEST_CASE ("classify: assist sign flip against the hand sequence and the windowed oracle")
    {
        const auto cfg = sign_flip_config ();
        const auto table = csv::parse_table (cli::classify_trace (fixture::sign_flip_trace (), cfg));
        REQUIRE (table.rows.size () == static_cast<std::size_t> (fixture::kSignFlipRows));
        const auto cw = static_cast<std::size_t> (table.column ("w_c"));
        const auto dw = static_cast<std::size_t> (table.column ("w_das"));
        const auto st = static_cast<std::size_t> (table.column ("state"));

        std::vector<double> tc (fixture::kSignFlipRows, 2.0), td (fixture::kSignFlipRows), v (fixture::kSignFlipRows, 0.5);
        for (int i = 0; i < fixture::kSignFlipRows; ++i)
            td[static_cast<std::size_t> (i)] = i < fixture::kSignFlipIndex ? 1.0 : -1.0;

        for (int i = 0; i < fixture::kSignFlipRows; ++i)
        {
            const auto &row = table.rows[static_cast<std::size_t> (i)];
            CAPTURE (i);
            CHECK (row[st] == fixture::sign_flip_state (i));
            const auto wc = oracle::windowed_work (tc, v, static_cast<std::size_t> (i), 50, fixture::kSignFlipDt);
            const auto wd = oracle::windowed_work (td, v, static_cast<std::size_t> (i), 50, fixture::kSignFlipDt);
            if (!wc)
            {
                CHECK (row[cw].empty ());
                continue;
            }
            CHECK (std::stod (row[cw]) == doctest::Approx (*wc).epsilon (1e-8));
            CHECK (std::abs (std::stod (row[dw]) - *wd) < 1e-8);
            CHECK (row[st] == table_label (oracle::table_state (*wc, *wd, cfg.gamma1_sq, cfg.gamma2_sq)));
        }
    }

    TEST_CASE ("classify: alternative velocity column and extra columns")
    {
        std::string csv = "t,extra,tau_c,tau_das,v_signal,v2\n";
        for (int i = 0; i <= 60; ++i)
            csv += std::to_string (i * 0.01) + ",x,1,1,1,-1\n";
        const auto table = csv::parse_table (cli::classify_trace (csv, {}, "v2"));
        CHECK (table.rows.back ()[1] == "x");
        CHECK (table.rows.back ().back () == "IV");
    }

    TEST_CASE ("classify: malformed input is rejected")
    {
        const coop::PseudoWorkConfig cfg;
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,v_signal\n0,1,1\n0.01,1,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal\n0,1,1,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal\n0,1,1,1\n0.01,1,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal\n0,1,1,1\n0.01,1,abc,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal\n0,1,1,1\n0.01,1,1,1\n0.03,1,1,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal\n0.01,1,1,1\n0,1,1,1\n", cfg), ConfigError);
        CHECK_THROWS_AS ((void)cli::classify_trace ("t,tau_c,tau_das,v_signal,state\n0,1,1,1,I\n0.01,1,1,1,I\n", cfg), ConfigError);
        coop::PseudoWorkConfig zero;
        zero.gamma1_sq = 0.0;
        CHECK_THROWS_AS ((void)cli::classify_trace (fixture::sign_flip_trace (), zero), ConfigError);
    }

    TEST_CASE ("exit codes")
    {
        TempDir d ("codes");
        CHECK (invoke ({}).code == cli::kUsageError);
        CHECK (invoke ({"--help"}).code == cli::kOk);
        CHECK (invoke ({"plan", "--start", "0,0,0"}).code == cli::kUsageError);
        CHECK (invoke ({"plan", "--start", "0,0", "--goal", "1,1,1"}).code == cli::kUsageError);
        CHECK (invoke ({"--out-dir", d.str (), "plan", "--start", "0,0,0", "--goal", "0,-1,0"}).code == cli::kPathInfeasible);
        CHECK_FALSE (fs::exists (d.path / "path.csv"));

        const auto ok = invoke ({"--out-dir", d.str (), "plan", "--start", "0,0,180", "--goal", "-10,0,180", "--direction", "forward"});
        CHECK (ok.code == cli::kOk);
        CHECK (ok.out.find ("max_curvature = 0 ") != std::string::npos);
        CHECK (fs::exists (d.path / "path.csv"));

        d.write ("bad.cfg", "[driver]\nnope = 1\n");
        const auto bad = invoke ({"--config", (d.path / "bad.cfg").string (), "simulate"});
        CHECK (bad.code == cli::kUsageError);
        CHECK (bad.err.find ("bad.cfg:2:") != std::string::npos);

        d.write ("infeasible.cfg", "[scenario]\ngoal_x = 0\ngoal_y = -1\ngoal_heading = 0\n");
        CHECK (invoke ({"--out-dir", d.str (), "--config", (d.path / "infeasible.cfg").string (), "simulate"}).code == cli::kPlanInfeasible);

        d.write ("diverge.cfg", "[scenario]\nstart_x = 1e300\n");
        const auto div = invoke ({"--out-dir", d.str (), "--config", (d.path / "diverge.cfg").string (), "simulate", "--no-plots"});
        CHECK (div.code == cli::kDivergence);
        CHECK_FALSE (fs::exists (d.path / "trial_log.csv"));

        d.write ("ragged.csv", "t,tau_c,tau_das,v_signal\n0,1,1,1\n0.01,1\n");
        CHECK (invoke ({"--out-dir", d.str (), "classify", "--input", (d.path / "ragged.csv").string ()}).code == cli::kUsageError);
        CHECK (invoke ({"classify", "--input", (d.path / "missing.csv").string ()}).code == cli::kUsageError);
    }

    TEST_CASE ("simulate is byte-identical across runs and writes every output")
    {
        TempDir a ("sim_a"), b ("sim_b");
        const auto ra = invoke ({"--out-dir", a.str (), "simulate", "--condition", "A"});
        const auto rb = invoke ({"simulate", "--condition", "A", "--out-dir", b.str ()});
        REQUIRE (ra.code == cli::kOk);
        REQUIRE (rb.code == cli::kOk);
        for (const char *f : {"trial_log.csv", "metrics.txt", "trajectory.svg", "states.svg"})
        {
            CAPTURE (f);
            CHECK_FALSE (a.read (f).empty ());
            CHECK (a.read (f) == b.read (f));
        }
        const auto table = csv::parse_table (a.read ("trial_log.csv"));
        const auto das = static_cast<std::size_t> (table.column ("tau_das"));
        for (const auto &row : table.rows)
            CHECK (std::stod (row[das]) == 0.0);
    }

    TEST_CASE ("seed flag changes the trial")
    {
        TempDir a ("seed_a"), b ("seed_b");
        REQUIRE (invoke ({"--out-dir", a.str (), "--seed", "1", "simulate", "--skill", "0", "--no-plots"}).code == cli::kOk);
        REQUIRE (invoke ({"--out-dir", b.str (), "--seed", "2", "simulate", "--skill", "0", "--no-plots"}).code == cli::kOk);
        CHECK (a.read ("trial_log.csv") != b.read ("trial_log.csv"));
        CHECK_FALSE (fs::exists (a.path / "trajectory.svg"));
    }

    TEST_CASE ("classify writes the annotated CSV")
    {
        TempDir d ("classify");
        d.write ("trace.csv", fixture::sign_flip_trace ());
        const auto r = invoke ({"--out-dir", d.str (), "classify", "--input", (d.path / "trace.csv").string (), "--gamma2-sq", "0.045"});
        REQUIRE (r.code == cli::kOk);
        CHECK (d.read ("classified.csv") == cli::classify_trace (fixture::sign_flip_trace (), sign_flip_config ()));
    }
}
