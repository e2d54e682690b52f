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

#include <hscpark/experiment.hpp>

#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>
#include <hscpark/rng.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace hscpark::experiment
{
    namespace
    {
        constexpr std::uint64_t kPopulationKey = 0x706f70ULL;
        constexpr std::uint64_t kJitterKey = 0x6a6974ULL;

        double quantize (double v) { return std::strtod (csv::format_number (v).c_str (), nullptr); }

        sim::TrialMetrics quantized (sim::TrialMetrics m)
        {
            m.rms_e = quantize (m.rms_e);
            m.mean_abs_tau_c = quantize (m.mean_abs_tau_c);
            m.mean_w_c = quantize (m.mean_w_c);
            m.mean_w_das = quantize (m.mean_w_das);
            m.duration = quantize (m.duration);
            return m;
        }

        std::size_t phase_index (Phase p) noexcept { return static_cast<std::size_t> (p); }

        struct SequenceOutput
        {
            std::vector<TrialRow> rows;
            std::vector<std::string> failures;
        };

        double initial_skill (const ExperimentPlan &plan, int driver)
        {
            NormalStream stream (derive_seed (plan.base_seed, {kPopulationKey, static_cast<std::uint64_t> (driver)}));
            return plan.skill_min + (plan.skill_max - plan.skill_min) * stream.uniform ();
        }

        SequenceOutput run_sequence (const ExperimentPlan &plan, const path::BezierPath &planned, assist::Condition condition, int driver)
        {
            SequenceOutput out;
            double skill = initial_skill (plan, driver);
            int trial_number = 0;
            for (Phase phase : kPhases)
            {
                for (int k = 1; k <= plan.trials.of (phase); ++k)
                {
                    ++trial_number;
                    const std::uint64_t seed =
                        derive_seed (plan.base_seed, {static_cast<std::uint64_t> (condition), static_cast<std::uint64_t> (driver),
                                                      static_cast<std::uint64_t> (phase), static_cast<std::uint64_t> (k)});
                    sim::ScenarioConfig scenario = plan.scenario;
                    scenario.seed = seed;
                    if (self_selected_start (phase))
                    {
                        NormalStream jitter (derive_seed (seed, {kJitterKey}));
                        Pose2D start = scenario.start;
                        start.x += plan.self_select_jitter.position_std * jitter ();
                        start.y += plan.self_select_jitter.position_std * jitter ();
                        start.heading = normalize_angle (start.heading + plan.self_select_jitter.heading_std * jitter ());
                        scenario.initial_pose = start;
                    }

                    assist::AssistConfig assist;
                    assist.preview = plan.assist_preview;
                    assist.enabled = phase == Phase::During && condition != assist::Condition::A;
                    assist.gain_cs = assist.enabled ? assist::condition_gain (condition) : 0.0;

                    const sim::DriverSetup setup{plan.anchors.at (skill), std::nullopt};
                    try
                    {
                        const sim::TrialLog log = sim::run_trial (scenario, planned, setup, assist);
                        TrialRow row;
                        row.condition = condition;
                        row.driver = driver;
                        row.phase = phase;
                        row.trial = trial_number;
                        row.skill = skill;
                        row.assisted = assist.enabled;
                        for (const auto &r : log.records)
                            row.max_abs_tau_das = std::max (row.max_abs_tau_das, std::abs (r.tau_das));
                        row.metrics = quantized (sim::compute_metrics (log));
                        out.rows.push_back (row);
                        if (plan.learning.enabled)
                            skill = driver::skill_update (skill, row.metrics.rms_e, plan.learning.rate, plan.learning.e_ref);
                    }
                    catch (const std::exception &ex)
                    {
                        out.failures.push_back (std::string ("condition ") + assist::condition_name (condition) + ", driver " +
                                                std::to_string (driver) + ", phase " + std::string (phase_label (phase)) + ", trial " +
                                                std::to_string (trial_number) + ": " + ex.what ());
                    }
                }
            }
            return out;
        }

        std::string fmt (double v) { return csv::format_number (v); }

        std::string fmt_correlation (const std::optional<double> &r) { return r ? fmt (*r) : std::string ("undefined"); }
    } // namespace

    std::string_view phase_label (Phase p) noexcept
    {
        switch (p)
        {
        case Phase::Before:
            return "before";
        case Phase::During:
            return "during";
        case Phase::AfterFixed:
            return "after_fixed";
        case Phase::AfterSelf:
            return "after_self";
        }
        return "?";
    }

    std::optional<Phase> parse_phase (std::string_view label) noexcept
    {
        for (Phase p : kPhases)
            if (phase_label (p) == label)
                return p;
        return std::nullopt;
    }

    bool self_selected_start (Phase p) noexcept { return p == Phase::Before || p == Phase::AfterSelf; }

    int TrialCounts::of (Phase p) const noexcept
    {
        switch (p)
        {
        case Phase::Before:
            return before;
        case Phase::During:
            return during;
        case Phase::AfterFixed:
            return after_fixed;
        case Phase::AfterSelf:
            return after_self;
        }
        return 0;
    }

    void ExperimentPlan::validate () const
    {
        if (conditions.empty ())
            throw ConfigError ("experiment needs at least one condition");
        if (trials.before < 1 || trials.during < 1 || trials.after_fixed < 1 || trials.after_self < 1)
            throw ConfigError ("every phase needs at least one trial");
        if (drivers_per_condition < 1)
            throw ConfigError ("drivers_per_condition must be >= 1");
        if (!(skill_min >= 0.0 && skill_max <= 1.0 && skill_min <= skill_max))
            throw ConfigError ("initial skill range must satisfy 0 <= skill_min <= skill_max <= 1");
        if (!(self_select_jitter.position_std >= 0.0) || !(self_select_jitter.heading_std >= 0.0))
            throw ConfigError ("jitter standard deviations must be >= 0");
        if (learning.enabled && (!(learning.rate >= 0.0) || !(learning.e_ref > 0.0)))
            throw ConfigError ("learning needs rate >= 0 and e_ref > 0");
        if (threads < 0)
            throw ConfigError ("threads must be >= 0");
        scenario.validate ();
        anchors.novice.validate ();
        anchors.expert.validate ();
        assist_preview.validate ();
    }

    const ConditionResult *ExperimentReport::find (assist::Condition c) const noexcept
    {
        for (const auto &r : conditions)
            if (r.condition == c)
                return &r;
        return nullptr;
    }

    std::size_t ExperimentReport::trial_count () const noexcept
    {
        std::size_t n = 0;
        for (const auto &c : conditions)
            for (const auto &p : c.phases)
                n += p.rows.size ();
        return n;
    }

    Aggregate aggregate (std::span<const double> values)
    {
        Aggregate a;
        if (values.empty ())
            return a;
        double sum = 0.0;
        for (double v : values)
            sum += v;
        a.mean = sum / static_cast<double> (values.size ());
        if (values.size () > 1)
        {
            double ss = 0.0;
            for (double v : values)
                ss += (v - a.mean) * (v - a.mean);
            a.stddev = std::sqrt (ss / static_cast<double> (values.size () - 1));
        }
        return a;
    }

    std::optional<double> correlate_deltas (std::span<const DeltaPair> rows)
    {
        if (rows.size () < 3)
            return std::nullopt;
        const auto n = static_cast<double> (rows.size ());
        double mx = 0.0;
        double my = 0.0;
        for (const auto &r : rows)
        {
            mx += r.during;
            my += r.after;
        }
        mx /= n;
        my /= n;
        double sxy = 0.0;
        double sxx = 0.0;
        double syy = 0.0;
        for (const auto &r : rows)
        {
            const double dx = r.during - mx;
            const double dy = r.after - my;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        if (!(sxx > 0.0) || !(syy > 0.0))
            return std::nullopt;
        return std::clamp (sxy / std::sqrt (sxx * syy), -1.0, 1.0);
    }

    ConditionResult summarize_condition (assist::Condition c, std::vector<TrialRow> rows)
    {
        std::stable_sort (rows.begin (), rows.end (), [] (const TrialRow &a, const TrialRow &b) {
            return a.driver != b.driver ? a.driver < b.driver : a.trial < b.trial;
        });

        ConditionResult result;
        result.condition = c;
        for (Phase p : kPhases)
            result.phases[phase_index (p)].phase = p;
        for (const auto &row : rows)
            result.phases[phase_index (row.phase)].rows.push_back (row);

        for (auto &phase : result.phases)
        {
            std::vector<double> rms, tau, wc, wdas;
            for (const auto &row : phase.rows)
            {
                rms.push_back (row.metrics.rms_e);
                tau.push_back (row.metrics.mean_abs_tau_c);
                wc.push_back (row.metrics.mean_w_c);
                wdas.push_back (row.metrics.mean_w_das);
            }
            phase.rms_e = aggregate (rms);
            phase.mean_abs_tau_c = aggregate (tau);
            phase.mean_w_c = aggregate (wc);
            phase.mean_w_das = aggregate (wdas);
        }

        std::map<int, std::array<std::vector<double>, 4>> per_driver;
        for (const auto &row : rows)
            per_driver[row.driver][phase_index (row.phase)].push_back (row.metrics.rms_e);
        std::vector<DeltaPair> pairs;
        for (const auto &[driver, phases] : per_driver)
        {
            const auto &before = phases[phase_index (Phase::Before)];
            const auto &during = phases[phase_index (Phase::During)];
            std::vector<double> after = phases[phase_index (Phase::AfterFixed)];
            const auto &after_self = phases[phase_index (Phase::AfterSelf)];
            after.insert (after.end (), after_self.begin (), after_self.end ());
            if (before.empty () || during.empty () || after.empty ())
                continue;
            DriverDelta d;
            d.driver = driver;
            d.before = aggregate (before).mean;
            d.during = aggregate (during).mean;
            d.after = aggregate (after).mean;
            d.delta_during = d.before - d.during;
            d.delta_after = d.before - d.after;
            result.deltas.push_back (d);
            pairs.push_back ({d.delta_during, d.delta_after});
        }
        result.delta_correlation = correlate_deltas (pairs);
        return result;
    }

    ExperimentReport run_experiment (const ExperimentPlan &plan)
    {
        plan.validate ();
        path::BezierPath planned;
        try
        {
            planned = path::plan_parking_path (plan.scenario.start, plan.scenario.goal, plan.scenario.planner);
        }
        catch (const Infeasible &ex)
        {
            throw PlanInfeasible (ex.what ());
        }

        struct Job
        {
            assist::Condition condition;
            int driver;
        };
        std::vector<Job> jobs;
        for (auto c : plan.conditions)
            for (int d = 1; d <= plan.drivers_per_condition; ++d)
                jobs.push_back ({c, d});

        std::vector<SequenceOutput> outputs (jobs.size ());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add (1); i < jobs.size (); i = next.fetch_add (1))
                outputs[i] = run_sequence (plan, planned, jobs[i].condition, jobs[i].driver);
        };
        unsigned n_threads = plan.threads > 0 ? static_cast<unsigned> (plan.threads) : std::max (1u, std::thread::hardware_concurrency ());
        n_threads = std::min<unsigned> (n_threads, static_cast<unsigned> (jobs.size ()));
        if (n_threads <= 1)
            worker ();
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < n_threads; ++t)
                pool.emplace_back (worker);
        }

        ExperimentReport report;
        report.learning_enabled = plan.learning.enabled;
        std::vector<DeltaPair> pooled;
        for (auto c : plan.conditions)
        {
            std::vector<TrialRow> rows;
            for (std::size_t i = 0; i < jobs.size (); ++i)
            {
                if (jobs[i].condition != c)
                    continue;
                rows.insert (rows.end (), outputs[i].rows.begin (), outputs[i].rows.end ());
                report.failures.insert (report.failures.end (), outputs[i].failures.begin (), outputs[i].failures.end ());
            }
            report.conditions.push_back (summarize_condition (c, std::move (rows)));
            if (assist::condition_gain (c) > 0.0)
            {
                report.correlation_applicable = true;
                for (const auto &d : report.conditions.back ().deltas)
                    pooled.push_back ({d.delta_during, d.delta_after});
            }
        }
        if (report.correlation_applicable)
            report.delta_correlation = correlate_deltas (pooled);
        return report;
    }

    std::string format_trial_csv (const ExperimentReport &report)
    {
        std::string out (trial_csv_header);
        out += '\n';
        for (const auto &c : report.conditions)
        {
            std::vector<const TrialRow *> rows;
            for (const auto &p : c.phases)
                for (const auto &r : p.rows)
                    rows.push_back (&r);
            std::stable_sort (rows.begin (), rows.end (), [] (const TrialRow *a, const TrialRow *b) {
                return a->driver != b->driver ? a->driver < b->driver : a->trial < b->trial;
            });
            for (const auto *r : rows)
            {
                out += assist::condition_name (r->condition);
                out += ',' + std::to_string (r->driver);
                out += ',' + std::string (phase_label (r->phase));
                out += ',' + std::to_string (r->trial);
                out += ',' + fmt (r->metrics.rms_e);
                out += ',' + fmt (r->metrics.mean_abs_tau_c);
                out += ',' + fmt (r->metrics.mean_w_c);
                out += ',' + fmt (r->metrics.mean_w_das);
                out += r->metrics.captured ? ",true" : ",false";
                out += ',' + fmt (r->metrics.duration);
                out += '\n';
            }
        }
        return out;
    }

    std::vector<TrialRow> parse_trial_csv (std::string_view text)
    {
        const auto table = csv::parse_table (text);
        if (table.header != csv::split_line (trial_csv_header))
            throw ConfigError ("per-trial CSV header mismatch");
        std::vector<TrialRow> rows;
        for (std::size_t i = 0; i < table.rows.size (); ++i)
        {
            const auto &f = table.rows[i];
            const std::string where = "line " + std::to_string (table.lines[i]);
            TrialRow r;
            const auto cond = assist::parse_condition (f[0]);
            const auto phase = parse_phase (f[2]);
            if (!cond || !phase)
                throw ConfigError (where + ": unknown condition or phase");
            r.condition = *cond;
            r.phase = *phase;
            r.driver = static_cast<int> (csv::parse_number (f[1], "driver"));
            r.trial = static_cast<int> (csv::parse_number (f[3], "trial"));
            r.metrics.rms_e = csv::parse_number (f[4], "rms_e");
            r.metrics.mean_abs_tau_c = csv::parse_number (f[5], "mean_abs_tau_c");
            r.metrics.mean_w_c = csv::parse_number (f[6], "mean_w_c");
            r.metrics.mean_w_das = csv::parse_number (f[7], "mean_w_das");
            if (f[8] != "true" && f[8] != "false")
                throw ConfigError (where + ": captured must be true or false");
            r.metrics.captured = f[8] == "true";
            r.metrics.duration = csv::parse_number (f[9], "duration");
            rows.push_back (r);
        }
        return rows;
    }

    std::string format_summary (const ExperimentReport &report)
    {
        std::ostringstream os;
        for (const auto &c : report.conditions)
        {
            const double gain = assist::condition_gain (c.condition);
            os << "Condition " << assist::condition_name (c.condition) << " (C_s = " << fmt (gain) << ")\n";
            char head[256];
            std::snprintf (head, sizeof head, "%-12s %-7s %-6s %-13s %3s %14s %14s %14s %14s %14s\n", "phase", "trials", "assist", "start", "n",
                           "rms_e_mean", "rms_e_sd", "abs_tau_c_mean", "w_c_mean", "w_das_mean");
            os << head;
            int first = 1;
            for (const auto &p : c.phases)
            {
                int count = 0;
                int lo = 0, hi = 0;
                for (const auto &r : p.rows)
                {
                    lo = lo == 0 ? r.trial : std::min (lo, r.trial);
                    hi = std::max (hi, r.trial);
                    ++count;
                }
                if (count == 0)
                    lo = hi = first;
                first = hi + 1;
                char line[256];
                std::snprintf (line, sizeof line, "%-12s %-7s %-6s %-13s %3d %14s %14s %14s %14s %14s\n",
                               std::string (phase_label (p.phase)).c_str (), (std::to_string (lo) + "-" + std::to_string (hi)).c_str (),
                               (p.phase == Phase::During && gain > 0.0) ? "yes" : "no",
                               self_selected_start (p.phase) ? "self-selected" : "fixed", count, fmt (p.rms_e.mean).c_str (),
                               fmt (p.rms_e.stddev).c_str (), fmt (p.mean_abs_tau_c.mean).c_str (), fmt (p.mean_w_c.mean).c_str (),
                               fmt (p.mean_w_das.mean).c_str ());
                os << line;
            }
            os << "delta correlation (during vs after): "
               << (gain > 0.0 ? fmt_correlation (c.delta_correlation) : std::string ("not applicable (no assist)")) << "\n\n";
        }
        os << "Pooled delta correlation over assisted conditions: ";
        if (!report.correlation_applicable)
            os << "not applicable (no assisted condition)\n";
        else
            os << fmt_correlation (report.delta_correlation) << '\n';
        if (report.learning_enabled)
            os << "Note: skill changes come from the configured learning rule of the synthetic driver; they check the\n"
                  "harness wiring and are not a reproduction of human learning results.\n";
        if (!report.failures.empty ())
        {
            os << "Failed trials: " << report.failures.size () << '\n';
            for (const auto &f : report.failures)
                os << "  " << f << '\n';
        }
        return os.str ();
    }
} // namespace hscpark::experiment
