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

#include <hscpark/config.hpp>

#include <hscpark/csv.hpp>
#include <hscpark/error.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

namespace hscpark::config
{
    namespace
    {
        constexpr double kDeg = std::numbers::pi / 180.0;

        using Setter = std::function<void (RunConfig &, std::string_view)>;
        using Getter = std::function<std::string (const RunConfig &)>;

        struct Key
        {
            std::string_view section;
            std::string_view name;
            std::string_view unit;
            Setter set;
            Getter get;
        };

        enum class Check
        {
            Any,
            Positive,
            NonNegative,
            UnitInterval,
        };

        void check (double v, Check c)
        {
            switch (c)
            {
            case Check::Any:
                if (!std::isfinite (v))
                    throw ConfigError ("value must be finite");
                break;
            case Check::Positive:
                if (!(v > 0.0) || !std::isfinite (v))
                    throw ConfigError ("value must be > 0");
                break;
            case Check::NonNegative:
                if (!(v >= 0.0) || !std::isfinite (v))
                    throw ConfigError ("value must be >= 0");
                break;
            case Check::UnitInterval:
                if (!(v >= 0.0 && v <= 1.0))
                    throw ConfigError ("value must lie in [0, 1]");
                break;
            }
        }

        template <typename F> Key real (std::string_view s, std::string_view n, std::string_view unit, F ref, Check c = Check::Any)
        {
            return {s, n, unit,
                    [ref, c] (RunConfig &cfg, std::string_view v) {
                        const double x = csv::parse_number (v, "value");
                        check (x, c);
                        ref (cfg) = x;
                    },
                    [ref] (const RunConfig &cfg) { return csv::format_number (ref (cfg)); }};
        }

        template <typename F> Key degrees (std::string_view s, std::string_view n, F ref, Check c = Check::Any)
        {
            return {s, n, "deg",
                    [ref, c] (RunConfig &cfg, std::string_view v) {
                        const double x = csv::parse_number (v, "value");
                        check (x, c);
                        ref (cfg) = x * kDeg;
                    },
                    [ref] (const RunConfig &cfg) { return csv::format_number (ref (cfg) / kDeg); }};
        }

        template <typename F> Key integer (std::string_view s, std::string_view n, std::string_view unit, F ref, int min)
        {
            return {s, n, unit,
                    [ref, min] (RunConfig &cfg, std::string_view v) {
                        int x = 0;
                        const auto [p, ec] = std::from_chars (v.data (), v.data () + v.size (), x);
                        if (ec != std::errc{} || p != v.data () + v.size ())
                            throw ConfigError ("expected an integer, got '" + std::string (v) + "'");
                        if (x < min)
                            throw ConfigError ("value must be >= " + std::to_string (min));
                        ref (cfg) = x;
                    },
                    [ref] (const RunConfig &cfg) { return std::to_string (ref (cfg)); }};
        }

        template <typename F> Key seed (std::string_view s, std::string_view n, F ref)
        {
            return {s, n, "",
                    [ref] (RunConfig &cfg, std::string_view v) {
                        std::uint64_t x = 0;
                        const auto [p, ec] = std::from_chars (v.data (), v.data () + v.size (), x);
                        if (ec != std::errc{} || p != v.data () + v.size ())
                            throw ConfigError ("expected an unsigned 64-bit integer, got '" + std::string (v) + "'");
                        ref (cfg) = x;
                    },
                    [ref] (const RunConfig &cfg) { return std::to_string (ref (cfg)); }};
        }

        template <typename F> Key boolean (std::string_view s, std::string_view n, F ref)
        {
            return {s, n, "true/false",
                    [ref] (RunConfig &cfg, std::string_view v) {
                        if (v == "true")
                            ref (cfg) = true;
                        else if (v == "false")
                            ref (cfg) = false;
                        else
                            throw ConfigError ("expected true or false, got '" + std::string (v) + "'");
                    },
                    [ref] (const RunConfig &cfg) { return std::string (ref (cfg) ? "true" : "false"); }};
        }

        void add_driver_keys (std::vector<Key> &keys, std::string_view section, driver::DriverParams driver::SkillAnchors::*anchor)
        {
            auto p = [anchor] (auto &c) -> auto & { return c.anchors.*anchor; };
            keys.push_back (real (section, "neuromuscular_gain", "N m/rad", [p] (auto &c) -> auto & { return p (c).neuromuscular_gain; },
                                  Check::Positive));
            keys.push_back (real (section, "neuromuscular_damping", "N m s/rad",
                                  [p] (auto &c) -> auto & { return p (c).neuromuscular_damping; }, Check::NonNegative));
            keys.push_back (real (section, "reaction_delay", "s", [p] (auto &c) -> auto & { return p (c).reaction_delay; },
                                  Check::NonNegative));
            keys.push_back (real (section, "torque_noise_std", "N m", [p] (auto &c) -> auto & { return p (c).torque_noise_std; },
                                  Check::NonNegative));
            keys.push_back (real (section, "preview_time", "s", [p] (auto &c) -> auto & { return p (c).preview.preview_time; },
                                  Check::NonNegative));
            keys.push_back (real (section, "error_gain", "rad/m", [p] (auto &c) -> auto & { return p (c).preview.error_gain; },
                                  Check::NonNegative));
            keys.push_back (boolean (section, "feedforward", [p] (auto &c) -> auto & { return p (c).preview.feedforward_on; }));
        }

        const std::vector<Key> &key_table ()
        {
            static const std::vector<Key> keys = [] {
                std::vector<Key> k;
                // scenario
                k.push_back (real ("scenario", "start_x", "m", [] (auto &c) -> auto & { return c.scenario.start.x; }));
                k.push_back (real ("scenario", "start_y", "m", [] (auto &c) -> auto & { return c.scenario.start.y; }));
                k.push_back (degrees ("scenario", "start_heading", [] (auto &c) -> auto & { return c.scenario.start.heading; }));
                k.push_back (real ("scenario", "goal_x", "m", [] (auto &c) -> auto & { return c.scenario.goal.x; }));
                k.push_back (real ("scenario", "goal_y", "m", [] (auto &c) -> auto & { return c.scenario.goal.y; }));
                k.push_back (degrees ("scenario", "goal_heading", [] (auto &c) -> auto & { return c.scenario.goal.heading; }));
                k.push_back (real ("scenario", "dt", "s", [] (auto &c) -> auto & { return c.scenario.dt; }, Check::Positive));
                k.push_back (
                    real ("scenario", "control_dt", "s", [] (auto &c) -> auto & { return c.scenario.control_dt; }, Check::Positive));
                k.push_back (real ("scenario", "timeout", "s", [] (auto &c) -> auto & { return c.scenario.timeout; }, Check::Positive));
                k.push_back (real ("scenario", "capture_position", "m", [] (auto &c) -> auto & { return c.scenario.capture.position; },
                                   Check::Positive));
                k.push_back (degrees ("scenario", "capture_heading", [] (auto &c) -> auto & { return c.scenario.capture.heading; },
                                      Check::Positive));
                k.push_back (seed ("scenario", "seed", [] (auto &c) -> auto & { return c.scenario.seed; }));
                k.push_back ({"scenario", "velocity_signal", "lateral_error_rate/column_rate",
                              [] (RunConfig &c, std::string_view v) {
                                  if (v == "lateral_error_rate")
                                      c.scenario.velocity_signal = sim::VelocitySignal::LateralErrorRate;
                                  else if (v == "column_rate")
                                      c.scenario.velocity_signal = sim::VelocitySignal::ColumnRate;
                                  else
                                      throw ConfigError ("expected lateral_error_rate or column_rate, got '" + std::string (v) + "'");
                              },
                              [] (const RunConfig &c) {
                                  return std::string (c.scenario.velocity_signal == sim::VelocitySignal::ColumnRate ? "column_rate"
                                                                                                                   : "lateral_error_rate");
                              }});
                // planner
                k.push_back (real ("planner", "min_turn_radius", "m", [] (auto &c) -> auto & { return c.scenario.planner.min_turn_radius; },
                                   Check::Positive));
                k.push_back (integer ("planner", "curvature_samples", "", [] (auto &c) -> auto & { return c.scenario.planner.curvature_samples; },
                                      64));
                k.push_back (real ("planner", "length_tolerance", "relative",
                                   [] (auto &c) -> auto & { return c.scenario.planner.length_tolerance; }, Check::Positive));
                k.push_back ({"planner", "direction", "reverse/forward",
                              [] (RunConfig &c, std::string_view v) {
                                  if (v == "reverse")
                                      c.scenario.planner.direction = path::TravelDirection::Reverse;
                                  else if (v == "forward")
                                      c.scenario.planner.direction = path::TravelDirection::Forward;
                                  else
                                      throw ConfigError ("expected reverse or forward, got '" + std::string (v) + "'");
                              },
                              [] (const RunConfig &c) {
                                  return std::string (c.scenario.planner.direction == path::TravelDirection::Forward ? "forward" : "reverse");
                              }});
                // vehicle
                k.push_back (real ("vehicle", "wheelbase", "m", [] (auto &c) -> auto & { return c.scenario.vehicle.wheelbase; },
                                   Check::Positive));
                k.push_back (real ("vehicle", "steering_ratio", "", [] (auto &c) -> auto & { return c.scenario.vehicle.steering_ratio; },
                                   Check::Positive));
                k.push_back ({"vehicle", "max_column_angle", "deg",
                              [] (RunConfig &c, std::string_view v) {
                                  const double x = csv::parse_number (v, "value");
                                  check (x, Check::Positive);
                                  c.scenario.vehicle.max_column_angle = x * kDeg;
                                  c.scenario.column.max_angle = x * kDeg;
                              },
                              [] (const RunConfig &c) { return csv::format_number (c.scenario.vehicle.max_column_angle / kDeg); }});
                k.push_back (real ("vehicle", "reverse_speed", "m/s", [] (auto &c) -> auto & { return c.scenario.vehicle.reverse_speed; }));
                k.push_back (real ("vehicle", "speed_ramp", "s", [] (auto &c) -> auto & { return c.scenario.vehicle.speed_ramp; },
                                   Check::NonNegative));
                // column
                k.push_back (real ("column", "inertia", "kg m^2", [] (auto &c) -> auto & { return c.scenario.column.inertia; },
                                   Check::Positive));
                k.push_back (real ("column", "damping", "N m s/rad", [] (auto &c) -> auto & { return c.scenario.column.damping; },
                                   Check::NonNegative));
                k.push_back (real ("column", "aligning_stiffness", "N m/rad",
                                   [] (auto &c) -> auto & { return c.scenario.column.aligning_stiffness; }, Check::Positive));
                k.push_back (degrees ("column", "initial_angle", [] (auto &c) -> auto & { return c.scenario.column.theta; }));
                k.push_back (real ("column", "initial_rate", "rad/s", [] (auto &c) -> auto & { return c.scenario.column.theta_dot; }));
                // driver
                k.push_back (
                    real ("driver", "skill", "0 novice .. 1 expert", [] (auto &c) -> auto & { return c.driver_skill; }, Check::UnitInterval));
                k.push_back ({"driver", "intent_offset", "m, or none",
                              [] (RunConfig &c, std::string_view v) {
                                  if (v == "none")
                                      c.intent_offset.reset ();
                                  else
                                  {
                                      const double x = csv::parse_number (v, "value");
                                      check (x, Check::Any);
                                      c.intent_offset = x;
                                  }
                              },
                              [] (const RunConfig &c) { return c.intent_offset ? csv::format_number (*c.intent_offset) : std::string ("none"); }});
                add_driver_keys (k, "driver.novice", &driver::SkillAnchors::novice);
                add_driver_keys (k, "driver.expert", &driver::SkillAnchors::expert);
                // assist
                k.push_back ({"assist", "condition", "A (C_s 0) / B (C_s 0.5) / C (C_s 1.0)",
                              [] (RunConfig &c, std::string_view v) {
                                  const auto cond = assist::parse_condition (v);
                                  if (!cond)
                                      throw ConfigError ("expected A, B or C, got '" + std::string (v) + "'");
                                  c.condition = *cond;
                              },
                              [] (const RunConfig &c) { return std::string (1, assist::condition_name (c.condition)); }});
                k.push_back (real ("assist", "preview_time", "s", [] (auto &c) -> auto & { return c.assist_preview.preview_time; },
                                   Check::NonNegative));
                k.push_back (real ("assist", "error_gain", "rad/m", [] (auto &c) -> auto & { return c.assist_preview.error_gain; },
                                   Check::NonNegative));
                k.push_back (boolean ("assist", "feedforward", [] (auto &c) -> auto & { return c.assist_preview.feedforward_on; }));
                // pseudo-work
                k.push_back (real ("pseudo_work", "window", "s", [] (auto &c) -> auto & { return c.scenario.pseudo_work.window; },
                                   Check::Positive));
                k.push_back (real ("pseudo_work", "gamma1_sq", "N m^2/s",
                                   [] (auto &c) -> auto & { return c.scenario.pseudo_work.gamma1_sq; }, Check::Positive));
                k.push_back (real ("pseudo_work", "gamma2_sq", "N m^2/s",
                                   [] (auto &c) -> auto & { return c.scenario.pseudo_work.gamma2_sq; }, Check::Positive));
                // experiment
                k.push_back ({"experiment", "conditions", "comma separated subset of A,B,C",
                              [] (RunConfig &c, std::string_view v) {
                                  std::vector<assist::Condition> out;
                                  for (const auto &item : csv::split_line (v))
                                  {
                                      std::string_view name = item;
                                      while (!name.empty () && name.front () == ' ')
                                          name.remove_prefix (1);
                                      while (!name.empty () && name.back () == ' ')
                                          name.remove_suffix (1);
                                      const auto cond = assist::parse_condition (name);
                                      if (!cond)
                                          throw ConfigError ("unknown condition '" + std::string (name) + "'");
                                      for (auto seen : out)
                                          if (seen == *cond)
                                              throw ConfigError ("condition '" + std::string (name) + "' listed twice");
                                      out.push_back (*cond);
                                  }
                                  if (out.empty ())
                                      throw ConfigError ("at least one condition is required");
                                  c.experiment.conditions = out;
                              },
                              [] (const RunConfig &c) {
                                  std::string s;
                                  for (auto cond : c.experiment.conditions)
                                  {
                                      if (!s.empty ())
                                          s += ',';
                                      s += assist::condition_name (cond);
                                  }
                                  return s;
                              }});
                k.push_back (integer ("experiment", "trials_before", "", [] (auto &c) -> auto & { return c.experiment.trials.before; }, 1));
                k.push_back (integer ("experiment", "trials_during", "", [] (auto &c) -> auto & { return c.experiment.trials.during; }, 1));
                k.push_back (
                    integer ("experiment", "trials_after_fixed", "", [] (auto &c) -> auto & { return c.experiment.trials.after_fixed; }, 1));
                k.push_back (
                    integer ("experiment", "trials_after_self", "", [] (auto &c) -> auto & { return c.experiment.trials.after_self; }, 1));
                k.push_back (integer ("experiment", "drivers_per_condition", "",
                                      [] (auto &c) -> auto & { return c.experiment.drivers_per_condition; }, 1));
                k.push_back (seed ("experiment", "base_seed", [] (auto &c) -> auto & { return c.experiment.base_seed; }));
                k.push_back (boolean ("experiment", "learning_enabled", [] (auto &c) -> auto & { return c.experiment.learning.enabled; }));
                k.push_back (real ("experiment", "learning_rate", "per trial", [] (auto &c) -> auto & { return c.experiment.learning.rate; },
                                   Check::NonNegative));
                k.push_back (real ("experiment", "learning_e_ref", "m", [] (auto &c) -> auto & { return c.experiment.learning.e_ref; },
                                   Check::Positive));
                k.push_back (real ("experiment", "jitter_position_std", "m",
                                   [] (auto &c) -> auto & { return c.experiment.self_select_jitter.position_std; }, Check::NonNegative));
                k.push_back (degrees ("experiment", "jitter_heading_std",
                                      [] (auto &c) -> auto & { return c.experiment.self_select_jitter.heading_std; }, Check::NonNegative));
                k.push_back (real ("experiment", "skill_min", "", [] (auto &c) -> auto & { return c.experiment.skill_min; },
                                   Check::UnitInterval));
                k.push_back (real ("experiment", "skill_max", "", [] (auto &c) -> auto & { return c.experiment.skill_max; },
                                   Check::UnitInterval));
                k.push_back (integer ("experiment", "threads", "0 = all cores", [] (auto &c) -> auto & { return c.experiment.threads; }, 0));
                return k;
            }();
            return keys;
        }

        std::string_view trim (std::string_view s)
        {
            while (!s.empty () && (s.front () == ' ' || s.front () == '\t' || s.front () == '\r'))
                s.remove_prefix (1);
            while (!s.empty () && (s.back () == ' ' || s.back () == '\t' || s.back () == '\r'))
                s.remove_suffix (1);
            return s;
        }
    } // namespace

    assist::AssistConfig RunConfig::assist_config () const
    {
        assist::AssistConfig a;
        a.gain_cs = assist::condition_gain (condition);
        a.preview = assist_preview;
        a.enabled = true;
        return a;
    }

    experiment::ExperimentPlan RunConfig::experiment_plan () const
    {
        experiment::ExperimentPlan plan = experiment;
        plan.scenario = scenario;
        plan.anchors = anchors;
        plan.assist_preview = assist_preview;
        return plan;
    }

    void RunConfig::validate () const
    {
        scenario.validate ();
        anchors.novice.validate ();
        anchors.expert.validate ();
        assist_preview.validate ();
        if (!(driver_skill >= 0.0 && driver_skill <= 1.0))
            throw ConfigError ("driver skill must lie in [0, 1]");
        experiment_plan ().validate ();
    }

    RunConfig parse_run_config (std::string_view text, std::string_view source)
    {
        RunConfig cfg;
        const auto &keys = key_table ();
        std::set<std::string> known_sections;
        for (const auto &k : keys)
            known_sections.emplace (k.section);

        std::string section;
        std::set<std::pair<std::string, std::string>> seen;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size ())
        {
            const std::size_t end = std::min (text.find ('\n', pos), text.size ());
            std::string_view line = text.substr (pos, end - pos);
            pos = end + 1;
            ++line_no;
            const std::string where = std::string (source) + ":" + std::to_string (line_no) + ": ";

            if (const auto hash = line.find ('#'); hash != std::string_view::npos)
                line = line.substr (0, hash);
            line = trim (line);
            if (line.empty ())
                continue;
            if (line.front () == '[')
            {
                if (line.back () != ']')
                    throw ConfigError (where + "malformed section header");
                section = std::string (trim (line.substr (1, line.size () - 2)));
                if (!known_sections.contains (section))
                    throw ConfigError (where + "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find ('=');
            if (eq == std::string_view::npos)
                throw ConfigError (where + "expected key = value");
            const std::string name (trim (line.substr (0, eq)));
            const std::string_view value = trim (line.substr (eq + 1));
            if (section.empty ())
                throw ConfigError (where + "key '" + name + "' outside any section");
            const Key *key = nullptr;
            for (const auto &k : keys)
                if (k.section == section && k.name == name)
                    key = &k;
            if (key == nullptr)
                throw ConfigError (where + "unknown key '" + name + "' in [" + section + "]");
            if (!seen.emplace (section, name).second)
                throw ConfigError (where + "key '" + name + "' repeated in [" + section + "]");
            if (value.empty ())
                throw ConfigError (where + "missing value for '" + name + "'");
            try
            {
                key->set (cfg, value);
            }
            catch (const Error &ex)
            {
                throw ConfigError (where + name + ": " + ex.what ());
            }
        }

        try
        {
            cfg.validate ();
        }
        catch (const Error &ex)
        {
            throw ConfigError (std::string (source) + ": " + ex.what ());
        }
        return cfg;
    }

    RunConfig load_run_config (const std::filesystem::path &file)
    {
        std::ifstream in (file, std::ios::binary);
        if (!in)
            throw ConfigError ("cannot open config file " + file.string ());
        std::ostringstream ss;
        ss << in.rdbuf ();
        return parse_run_config (ss.str (), file.string ());
    }

    std::string format_run_config (const RunConfig &cfg)
    {
        std::string out;
        std::string_view section;
        for (const auto &k : key_table ())
        {
            if (k.section != section)
            {
                if (!section.empty ())
                    out += '\n';
                section = k.section;
                out += '[';
                out += section;
                out += "]\n";
            }
            out += k.name;
            out += " = ";
            out += k.get (cfg);
            if (!k.unit.empty ())
            {
                out += "  # ";
                out += k.unit;
            }
            out += '\n';
        }
        return out;
    }
} // namespace hscpark::config
