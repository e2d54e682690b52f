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

#include <hscpark/cli/app.hpp>

#include <hscpark/cli/plot.hpp>
#include <hscpark/config.hpp>
#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>
#include <hscpark/experiment.hpp>
#include <hscpark/planner.hpp>
#include <hscpark/sim.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hscpark::cli
{
    namespace
    {
        namespace fs = std::filesystem;

        constexpr double kDeg = std::numbers::pi / 180.0;

        struct GlobalOptions
        {
            std::string config;
            std::string out_dir = ".";
            std::uint64_t seed = 0;
            bool seed_given = false;
        };

        /// Files are collected first and written together once the command has succeeded.
        class Outputs
        {
          public:
            explicit Outputs (fs::path dir) : dir_ (std::move (dir)) {}

            void add (const fs::path &name, std::string content)
            {
                files_.emplace_back (name.is_absolute () ? name : dir_ / name, std::move (content));
            }

            void commit (std::ostream &out) const
            {
                for (const auto &[target, content] : files_)
                {
                    if (target.has_parent_path ())
                        fs::create_directories (target.parent_path ());
                    csv::write_file_atomic (target, content);
                    out << "wrote " << target.string () << '\n';
                }
            }

          private:
            fs::path dir_;
            std::vector<std::pair<fs::path, std::string>> files_;
        };

        config::RunConfig load_config (const GlobalOptions &g)
        {
            return g.config.empty () ? config::RunConfig{} : config::load_run_config (g.config);
        }

        Pose2D parse_pose (const std::string &text, std::string_view flag)
        {
            const auto parts = csv::split_line (text);
            if (parts.size () != 3)
                throw ConfigError (std::string (flag) + " expects x,y,heading_deg");
            return {csv::parse_number (parts[0], flag), csv::parse_number (parts[1], flag), csv::parse_number (parts[2], flag) * kDeg};
        }

        std::string trimmed_number (double v)
        {
            // curvature and length are printed to 1e-12 resolution so round-off reads as 0
            return csv::format_number (std::abs (v) < 1e-12 ? 0.0 : v);
        }

        int cmd_plan (const GlobalOptions &g, const std::string &start, const std::string &goal, std::optional<double> r_min,
                      const std::string &direction, const std::string &output, std::ostream &out)
        {
            auto cfg = load_config (g);
            auto &planner = cfg.scenario.planner;
            if (r_min)
                planner.min_turn_radius = *r_min;
            if (direction == "forward")
                planner.direction = path::TravelDirection::Forward;
            else if (direction == "reverse")
                planner.direction = path::TravelDirection::Reverse;
            else if (!direction.empty ())
                throw ConfigError ("--direction expects reverse or forward");
            planner.validate ();
            const Pose2D s = parse_pose (start, "--start");
            const Pose2D e = parse_pose (goal, "--goal");

            const auto path = path::plan_parking_path (s, e, planner);
            const double length = path::path_length (path);
            const double kappa = path::max_sampled_curvature (path, planner.curvature_samples);

            Outputs files (g.out_dir);
            files.add (output.empty () ? fs::path ("path.csv") : fs::path (output),
                       std::string (path::path_record_header) + '\n' + path::format_path_record (path) + '\n');
            files.commit (out);
            out << "length = " << trimmed_number (length) << " # m\n";
            out << "max_curvature = " << trimmed_number (kappa) << " # 1/m\n";
            out << "curvature_limit = " << csv::format_number (1.0 / planner.min_turn_radius) << " # 1/m\n";
            return kOk;
        }

        int cmd_simulate (const GlobalOptions &g, const std::string &condition, std::optional<double> skill, bool plots, std::ostream &out)
        {
            auto cfg = load_config (g);
            if (!condition.empty ())
            {
                const auto c = assist::parse_condition (condition);
                if (!c)
                    throw ConfigError ("--condition expects A, B or C");
                cfg.condition = *c;
            }
            if (skill)
            {
                if (!(*skill >= 0.0 && *skill <= 1.0))
                    throw ConfigError ("--skill must lie in [0, 1]");
                cfg.driver_skill = *skill;
            }
            if (g.seed_given)
                cfg.scenario.seed = g.seed;
            cfg.validate ();

            path::BezierPath planned;
            try
            {
                planned = path::plan_parking_path (cfg.scenario.start, cfg.scenario.goal, cfg.scenario.planner);
            }
            catch (const Infeasible &ex)
            {
                throw PlanInfeasible (ex.what ());
            }
            sim::DriverSetup driver{cfg.driver_params (), std::nullopt};
            if (cfg.intent_offset)
                driver.intent = sim::offset_intent (planned, cfg.scenario, *cfg.intent_offset);

            const auto log = sim::run_trial (cfg.scenario, planned, driver, cfg.assist_config ());
            const std::string log_text = sim::format_trial_log (log);
            // the summary is computed from the emitted CSV so both always agree
            const auto records = sim::parse_trial_log (log_text);
            const auto metrics = sim::metrics_from_records (records, log.goal, log.captured);
            const std::string summary = sim::format_metrics (metrics);

            Outputs files (g.out_dir);
            files.add ("trial_log.csv", log_text);
            files.add ("metrics.txt", summary);
            if (plots)
            {
                files.add ("trajectory.svg", plot::trajectory_svg (planned, driver.intent ? std::optional (driver.intent->target_path) : std::nullopt,
                                                                   records));
                files.add ("states.svg", plot::state_timeline_svg (records));
            }
            files.commit (out);
            out << "condition = " << assist::condition_name (cfg.condition) << '\n' << summary;
            return kOk;
        }

        int cmd_experiment (const GlobalOptions &g, std::optional<int> threads, bool plots, std::ostream &out, std::ostream &err)
        {
            auto cfg = load_config (g);
            auto plan = cfg.experiment_plan ();
            if (g.seed_given)
                plan.base_seed = g.seed;
            if (threads)
                plan.threads = *threads;
            plan.validate ();

            const auto report = experiment::run_experiment (plan);
            const std::string summary = experiment::format_summary (report);

            Outputs files (g.out_dir);
            files.add ("trials.csv", experiment::format_trial_csv (report));
            files.add ("summary.txt", summary);
            if (plots)
                files.add ("phase_errors.svg", plot::phase_error_svg (report));
            files.commit (out);
            out << summary;
            if (!report.failures.empty ())
            {
                err << report.failures.size () << " trial(s) failed\n";
                return kTrialFailures;
            }
            return kOk;
        }

        int cmd_classify (const GlobalOptions &g, const std::string &input, const std::string &output, std::optional<double> window,
                          std::optional<double> gamma1_sq, std::optional<double> gamma2_sq, const std::string &v_column, std::ostream &out)
        {
            auto cfg = load_config (g);
            auto pw = cfg.scenario.pseudo_work;
            if (window)
                pw.window = *window;
            if (gamma1_sq)
                pw.gamma1_sq = *gamma1_sq;
            if (gamma2_sq)
                pw.gamma2_sq = *gamma2_sq;

            std::ifstream in (input, std::ios::binary);
            if (!in)
                throw ConfigError ("cannot open " + input);
            std::ostringstream text;
            text << in.rdbuf ();
            const std::string result = classify_trace (text.str (), pw, v_column);

            Outputs files (g.out_dir);
            files.add (output.empty () ? fs::path ("classified.csv") : fs::path (output), result);
            files.commit (out);
            return kOk;
        }
    } // namespace

    std::string classify_trace (std::string_view csv_text, const coop::PseudoWorkConfig &cfg, std::string_view velocity_column)
    {
        cfg.validate ();
        const auto table = csv::parse_table (csv_text);
        const int col_t = table.column ("t");
        const int col_c = table.column ("tau_c");
        const int col_das = table.column ("tau_das");
        const int col_v = table.column (velocity_column);
        if (col_t < 0 || col_c < 0 || col_das < 0 || col_v < 0)
            throw ConfigError ("trace header must contain t,tau_c,tau_das and " + std::string (velocity_column));
        for (const char *extra : {"w_c", "w_das", "state"})
            if (table.column (extra) >= 0)
                throw ConfigError (std::string ("trace already has a '") + extra + "' column");
        if (table.rows.size () < 2)
            throw ConfigError ("trace needs at least two rows");

        const std::size_t n = table.rows.size ();
        std::vector<double> t (n), tau_c (n), tau_das (n), v (n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto &row = table.rows[i];
            const std::string where = "line " + std::to_string (table.lines[i]);
            try
            {
                t[i] = csv::parse_number (row[static_cast<std::size_t> (col_t)], "t");
                tau_c[i] = csv::parse_number (row[static_cast<std::size_t> (col_c)], "tau_c");
                tau_das[i] = csv::parse_number (row[static_cast<std::size_t> (col_das)], "tau_das");
                v[i] = csv::parse_number (row[static_cast<std::size_t> (col_v)], velocity_column);
            }
            catch (const ConfigError &ex)
            {
                throw ConfigError (where + ": " + ex.what ());
            }
            if (!std::isfinite (t[i]) || !std::isfinite (tau_c[i]) || !std::isfinite (tau_das[i]) || !std::isfinite (v[i]))
                throw ConfigError (where + ": non-finite value");
        }
        const double step = t[1] - t[0];
        if (!(step > 0.0))
            throw ConfigError ("time must increase");
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs ((t[i] - t[i - 1]) - step) > kStepTolerance)
                throw ConfigError ("non-uniform time step at line " + std::to_string (table.lines[i]));
        const double dt = (t[n - 1] - t[0]) / static_cast<double> (n - 1);

        const coop::SampledSeries driver{tau_c, v, t[0], dt};
        const coop::SampledSeries assist{tau_das, v, t[0], dt};

        std::string out;
        for (std::size_t k = 0; k < table.header.size (); ++k)
            out += (k ? "," : "") + table.header[k];
        out += ",w_c,w_das,state\n";
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t k = 0; k < table.rows[i].size (); ++k)
                out += (k ? "," : "") + table.rows[i][k];
            const double ti = t[0] + static_cast<double> (i) * dt;
            if (ti - t[0] < cfg.window - 1e-9)
            {
                out += ",,,\n";
                continue;
            }
            const double w_c = coop::pseudo_work (driver, ti, cfg.window);
            const double w_das = coop::pseudo_work (assist, ti, cfg.window);
            out += ',' + csv::format_number (w_c) + ',' + csv::format_number (w_das) + ',' +
                   std::string (coop::to_string (coop::classify (w_c, w_das, cfg))) + '\n';
        }
        return out;
    }

    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Parking path planning, haptic shared control simulation and cooperative status analysis."};
        app.name ("hscpark");
        app.require_subcommand (1);

        GlobalOptions g;
        app.add_option ("--config", g.config, "run configuration file (sectioned key = value)")->envname ("HSCPARK_CONFIG");
        app.add_option ("--out-dir", g.out_dir, "directory for output files")->envname ("HSCPARK_OUT_DIR")->capture_default_str ();
        auto *seed_opt = app.add_option ("--seed", g.seed, "override the scenario seed (simulate) or base seed (experiment)")
                             ->envname ("HSCPARK_SEED");

        std::string start, goal, direction, output;
        std::optional<double> r_min;
        auto *plan = app.add_subcommand ("plan", "plan a curvature-bounded cubic Bezier parking path");
        plan->fallthrough ();
        plan->add_option ("--start", start, "start pose x,y,heading_deg")->required ();
        plan->add_option ("--goal", goal, "goal pose x,y,heading_deg")->required ();
        plan->add_option ("--r-min", r_min, "minimum turning radius, m (default from config)");
        plan->add_option ("--direction", direction, "reverse or forward (default from config)");
        plan->add_option ("--output", output, "path CSV (default <out-dir>/path.csv)");

        std::string condition;
        std::optional<double> skill;
        bool no_plots = false;
        auto *simulate = app.add_subcommand ("simulate", "run one closed-loop trial");
        simulate->fallthrough ();
        simulate->add_option ("--condition", condition, "assist condition A, B or C (default from config)");
        simulate->add_option ("--skill", skill, "driver skill in [0, 1] (default from config)");
        simulate->add_flag ("--no-plots", no_plots, "skip SVG output");

        std::optional<int> threads;
        auto *exp = app.add_subcommand ("experiment", "run the four-phase protocol for every condition");
        exp->fallthrough ();
        exp->add_option ("--threads", threads, "worker threads, 0 = all cores");
        exp->add_flag ("--no-plots", no_plots, "skip SVG output");

        std::string input, classify_out, v_column = "v_signal";
        std::optional<double> window, gamma1_sq, gamma2_sq;
        auto *classify = app.add_subcommand ("classify", "classify an external t,tau_c,tau_das,v_signal trace");
        classify->fallthrough ();
        classify->add_option ("--input", input, "input trace CSV")->required ();
        classify->add_option ("--output", classify_out, "output CSV (default <out-dir>/classified.csv)");
        classify->add_option ("--window", window, "pseudo-work window, s");
        classify->add_option ("--gamma1-sq", gamma1_sq, "driver threshold");
        classify->add_option ("--gamma2-sq", gamma2_sq, "assist threshold");
        classify->add_option ("--v-column", v_column, "column used as the velocity signal")->capture_default_str ();

        std::vector<std::string> reversed (args.rbegin (), args.rend ());
        try
        {
            app.parse (reversed);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help ();
            return kOk;
        }
        catch (const CLI::ParseError &ex)
        {
            err << "error: " << ex.what () << "\n\n" << app.help ();
            return kUsageError;
        }
        g.seed_given = seed_opt->count () > 0 || !seed_opt->as<std::string> ().empty ();

        try
        {
            if (plan->parsed ())
                return cmd_plan (g, start, goal, r_min, direction, output, out);
            if (simulate->parsed ())
                return cmd_simulate (g, condition, skill, !no_plots, out);
            if (exp->parsed ())
                return cmd_experiment (g, threads, !no_plots, out, err);
            return cmd_classify (g, input, classify_out, window, gamma1_sq, gamma2_sq, v_column, out);
        }
        catch (const Infeasible &ex)
        {
            err << "infeasible: " << ex.what () << '\n';
            return kPathInfeasible;
        }
        catch (const PlanInfeasible &ex)
        {
            err << "scenario cannot be planned: " << ex.what () << '\n';
            return kPlanInfeasible;
        }
        catch (const NumericalDivergence &ex)
        {
            err << "numerical divergence: " << ex.what () << '\n';
            return kDivergence;
        }
        catch (const ConfigError &ex)
        {
            err << "error: " << ex.what () << '\n';
            return kUsageError;
        }
        catch (const std::exception &ex)
        {
            err << "internal error: " << ex.what () << '\n';
            return kInternalError;
        }
    }
} // namespace hscpark::cli
