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

#include <hscpark/sim.hpp>

#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>
#include <hscpark/rng.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hscpark::sim
{
    namespace
    {
        bool finite_all (std::initializer_list<double> values) noexcept
        {
            return std::all_of (values.begin (), values.end (), [] (double v) { return std::isfinite (v); });
        }

        std::string optional_number (const std::optional<double> &v) { return v ? csv::format_number (*v) : std::string{}; }
    } // namespace

    void ScenarioConfig::validate () const
    {
        planner.validate ();
        vehicle.validate ();
        column.validate ();
        pseudo_work.validate ();
        if (!(dt > 0.0 && dt <= 0.01))
            throw ConfigError ("dt must lie in (0, 0.01] s");
        if (!(control_dt > 0.0))
            throw ConfigError ("control_dt must be > 0");
        const double ratio = control_dt / dt;
        if (std::abs (ratio - std::round (ratio)) > 1e-9 * ratio || std::round (ratio) < 1.0)
            throw ConfigError ("control_dt must be a positive integer multiple of dt");
        if (!(timeout > 0.0))
            throw ConfigError ("timeout must be > 0");
        if (!(capture.position > 0.0) || !(capture.heading > 0.0))
            throw ConfigError ("capture tolerances must be > 0");
        if (std::abs (column.max_angle - vehicle.max_column_angle) > 1e-12)
            throw ConfigError ("column max_angle must equal vehicle max_column_angle");
    }

    int ScenarioConfig::substeps () const { return static_cast<int> (std::lround (control_dt / dt)); }

    ScenarioConfig canonical_scenario ()
    {
        ScenarioConfig s;
        s.start = {0.0, 0.0, 0.0};
        s.goal = {-14.0, -14.0, std::numbers::pi / 2.0};
        s.planner.min_turn_radius = 12.0;
        s.column.max_angle = s.vehicle.max_column_angle;
        return s;
    }

    driver::DriverIntent offset_intent (const path::BezierPath &assist_path, const ScenarioConfig &scenario, double offset)
    {
        const Vec2 t = path::travel_tangent (scenario.start, scenario.planner.direction);
        return {assist_path.translated (offset * left_normal (t))};
    }

    TrialLog run_trial (const ScenarioConfig &scenario, const DriverSetup &driver, const assist::AssistConfig &assist)
    {
        scenario.validate ();
        path::BezierPath planned;
        try
        {
            planned = path::plan_parking_path (scenario.start, scenario.goal, scenario.planner);
        }
        catch (const Infeasible &ex)
        {
            throw PlanInfeasible (ex.what ());
        }
        return run_trial (scenario, planned, driver, assist);
    }

    TrialLog run_trial (const ScenarioConfig &scenario, const path::BezierPath &assist_path, const DriverSetup &driver,
                        const assist::AssistConfig &assist)
    {
        scenario.validate ();
        driver.params.validate ();
        assist.validate ();

        const auto direction = scenario.planner.direction;
        const int substeps = scenario.substeps ();
        const double cdt = scenario.control_dt;
        const auto &vp = scenario.vehicle;

        TrialLog log;
        log.assist_path = assist_path;
        log.driver_path = driver.intent ? driver.intent->target_path : assist_path;
        log.goal = scenario.goal;
        log.initial_column = scenario.column;
        log.substeps = substeps;
        log.dt = scenario.dt;

        const Pose2D init = scenario.initial_pose.value_or (scenario.start);
        vehicle::VehicleState car{init.x, init.y, normalize_angle (init.heading), 0.0, 0.0};
        vehicle::SteeringColumn column = scenario.column;

        driver::PreviewSteering driver_preview;
        driver::PreviewSteering assist_preview;
        driver::MuscleModel muscle (driver.params, cdt, column.theta, derive_seed (scenario.seed, {0x6472697665ULL}));

        std::vector<double> tau_c_hist;
        std::vector<double> tau_das_hist;
        std::vector<double> v_hist;
        const auto max_ticks = static_cast<std::size_t> (std::ceil (scenario.timeout / cdt + 1e-9));
        log.records.reserve (max_ticks + 1);
        tau_c_hist.reserve (max_ticks + 1);
        tau_das_hist.reserve (max_ticks + 1);
        v_hist.reserve (max_ticks + 1);

        double u_assist = 0.0;
        double u_driver = 0.0;
        const Vec2 goal_tangent = path::travel_tangent (scenario.goal, direction);

        for (std::size_t k = 0;; ++k)
        {
            const double t = static_cast<double> (k) * cdt;

            // (1) projections
            const auto proj_a = path::project_lateral (log.assist_path, car.position (), u_assist);
            const auto proj_d = path::project_lateral (log.driver_path, car.position (), u_driver);
            u_assist = proj_a.u_star;
            u_driver = proj_d.u_star;
            const auto at_a = path::eval_path (log.assist_path, u_assist);
            const auto at_d = path::eval_path (log.driver_path, u_driver);

            // (2) driver
            const auto est_d = driver_preview.observe (proj_d.lateral_error, cdt);
            const double theta_d_driver = driver::preview_command (est_d, at_d.signed_curvature, driver.params.preview, vp, direction);
            const auto muscle_out = muscle.muscle_torque (theta_d_driver, column);

            // (3) assist
            const auto est_a = assist_preview.observe (proj_a.lateral_error, cdt);
            const double theta_d_assist = driver::preview_command (est_a, at_a.signed_curvature, assist.preview, vp, direction);
            const double tau_das = assist::assist_torque (proj_a.lateral_error, column.theta, theta_d_assist, assist);

            // velocity signal and pseudo-work at this tick
            // d/dt of the signed lateral error equals the velocity component along the path's left normal.
            const Vec2 path_normal = left_normal (at_a.tangent);
            const double v_signal = scenario.velocity_signal == VelocitySignal::ColumnRate
                                        ? column.theta_dot
                                        : dot (car.velocity (), path_normal);
            tau_c_hist.push_back (muscle_out.tau_c);
            tau_das_hist.push_back (tau_das);
            v_hist.push_back (v_signal);

            StepRecord rec;
            rec.t = t;
            rec.x = car.x;
            rec.y = car.y;
            rec.heading = car.heading;
            rec.theta = column.theta;
            rec.theta_d_driver = theta_d_driver;
            rec.theta_d_assist = theta_d_assist;
            rec.tau_msl = muscle_out.tau_msl;
            rec.tau_c = muscle_out.tau_c;
            rec.tau_das = tau_das;
            rec.e = proj_a.lateral_error;
            rec.v_signal = v_signal;

            const double window = scenario.pseudo_work.window;
            if (t - window >= -1e-9 * cdt)
            {
                const coop::SampledSeries driver_series{tau_c_hist, v_hist, 0.0, cdt};
                const coop::SampledSeries assist_series{tau_das_hist, v_hist, 0.0, cdt};
                rec.w_c = coop::pseudo_work (driver_series, t, window);
                rec.w_das = coop::pseudo_work (assist_series, t, window);
                rec.state = coop::classify (*rec.w_c, *rec.w_das, scenario.pseudo_work);
            }

            if (!finite_all ({car.x, car.y, car.heading, column.theta, column.theta_dot, rec.tau_c, rec.tau_das, rec.e}))
                throw NumericalDivergence ("non-finite state at t=" + csv::format_number (t));
            log.records.push_back (rec);

            // termination
            const Vec2 to_goal = car.position () - scenario.goal.position ();
            const bool near = norm (to_goal) <= scenario.capture.position;
            const bool aligned = std::abs (angle_diff (car.heading, scenario.goal.heading)) <= scenario.capture.heading;
            if (near && aligned)
            {
                log.captured = true;
                log.termination = Termination::Captured;
                break;
            }
            if (u_assist >= 1.0 && dot (to_goal, goal_tangent) > scenario.capture.position)
            {
                log.termination = Termination::Overshoot;
                break;
            }
            if (k + 1 > max_ticks || t >= scenario.timeout)
            {
                log.termination = Termination::Timeout;
                break;
            }

            // (4)-(5) column and vehicle substeps
            for (int s = 0; s < substeps; ++s)
            {
                const double ts = t + s * scenario.dt;
                column = vehicle::step_steering (column, muscle_out.tau_c, tau_das, scenario.dt);
                car.speed = vehicle::speed_profile (ts, vp);
                car = vehicle::step_vehicle (car, column, vp, scenario.dt, path_normal);
            }
        }
        return log;
    }

    TrialMetrics metrics_from_records (const std::vector<StepRecord> &records, const Pose2D &goal, bool captured)
    {
        if (records.empty ())
            throw EmptyLog ("trial log has no records");
        TrialMetrics m;
        double sum_e2 = 0.0;
        double sum_abs_tau = 0.0;
        double sum_wc = 0.0;
        double sum_wdas = 0.0;
        std::vector<coop::CoopState> timeline;
        timeline.reserve (records.size ());
        for (const auto &r : records)
        {
            sum_e2 += r.e * r.e;
            sum_abs_tau += std::abs (r.tau_c);
            if (r.state && r.w_c && r.w_das)
            {
                sum_wc += *r.w_c;
                sum_wdas += *r.w_das;
                timeline.push_back (*r.state);
            }
        }
        const auto n = static_cast<double> (records.size ());
        m.rms_e = std::sqrt (sum_e2 / n);
        m.mean_abs_tau_c = sum_abs_tau / n;
        m.classified = timeline.size ();
        if (!timeline.empty ())
        {
            m.mean_w_c = sum_wc / static_cast<double> (timeline.size ());
            m.mean_w_das = sum_wdas / static_cast<double> (timeline.size ());
            m.occupancy = coop::state_occupancy (timeline);
        }
        else
        {
            m.occupancy.fraction[static_cast<std::size_t> (coop::CoopState::V)] = 1.0;
        }
        const auto &last = records.back ();
        m.final_position_error = distance (Vec2{last.x, last.y}, goal.position ());
        m.final_heading_error = std::abs (angle_diff (last.heading, goal.heading));
        m.duration = last.t;
        m.captured = captured;
        return m;
    }

    TrialMetrics compute_metrics (const TrialLog &log) { return metrics_from_records (log.records, log.goal, log.captured); }

    std::string format_trial_log (const TrialLog &log)
    {
        std::string out;
        out.reserve (log.records.size () * 160 + 128);
        out += trial_log_header;
        out += '\n';
        for (const auto &r : log.records)
        {
            for (double v : {r.t, r.x, r.y, r.heading, r.theta, r.theta_d_driver, r.theta_d_assist, r.tau_msl, r.tau_c, r.tau_das, r.e})
            {
                out += csv::format_number (v);
                out += ',';
            }
            out += optional_number (r.w_c);
            out += ',';
            out += optional_number (r.w_das);
            out += ',';
            if (r.state)
                out += coop::to_string (*r.state);
            out += '\n';
        }
        return out;
    }

    std::vector<StepRecord> parse_trial_log (std::string_view csv_text)
    {
        const auto table = csv::parse_table (csv_text);
        const auto expected = csv::split_line (trial_log_header);
        if (table.header != expected)
            throw ConfigError ("trial log header mismatch");
        std::vector<StepRecord> records;
        records.reserve (table.rows.size ());
        for (const auto &row : table.rows)
        {
            StepRecord r;
            double *fields[] = {&r.t, &r.x, &r.y, &r.heading, &r.theta, &r.theta_d_driver, &r.theta_d_assist, &r.tau_msl, &r.tau_c, &r.tau_das, &r.e};
            for (std::size_t i = 0; i < std::size (fields); ++i)
                *fields[i] = csv::parse_number (row[i], expected[i]);
            if (!row[11].empty ())
                r.w_c = csv::parse_number (row[11], "w_c");
            if (!row[12].empty ())
                r.w_das = csv::parse_number (row[12], "w_das");
            if (!row[13].empty ())
            {
                r.state = coop::parse_state (row[13]);
                if (!r.state)
                    throw ConfigError ("unknown cooperative state '" + row[13] + "'");
            }
            records.push_back (r);
        }
        return records;
    }

    std::string format_metrics (const TrialMetrics &m)
    {
        std::ostringstream os;
        os << "rms_e = " << csv::format_number (m.rms_e) << " # m\n";
        os << "mean_abs_tau_c = " << csv::format_number (m.mean_abs_tau_c) << " # N m\n";
        os << "mean_w_c = " << csv::format_number (m.mean_w_c) << " # N m m/s\n";
        os << "mean_w_das = " << csv::format_number (m.mean_w_das) << " # N m m/s\n";
        os << "final_position_error = " << csv::format_number (m.final_position_error) << " # m\n";
        os << "final_heading_error = " << csv::format_number (m.final_heading_error) << " # rad\n";
        os << "duration = " << csv::format_number (m.duration) << " # s\n";
        os << "captured = " << (m.captured ? "true" : "false") << '\n';
        os << "classified_samples = " << m.classified << '\n';
        for (auto s : {coop::CoopState::I, coop::CoopState::II, coop::CoopState::III, coop::CoopState::IV, coop::CoopState::V})
            os << "occupancy_" << coop::to_string (s) << " = " << csv::format_number (m.occupancy[s]) << '\n';
        return os.str ();
    }
} // namespace hscpark::sim
