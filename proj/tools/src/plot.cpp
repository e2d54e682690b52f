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

#include <hscpark/cli/plot.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hscpark::cli::plot
{
    namespace
    {
        constexpr double kWidth = 640.0;
        constexpr double kHeight = 640.0;
        constexpr double kMargin = 40.0;

        std::string num (double v)
        {
            char buf[32];
            std::snprintf (buf, sizeof buf, "%.2f", v);
            return buf;
        }

        std::string header (double w, double h)
        {
            return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num (w) + "\" height=\"" + num (h) + "\" viewBox=\"0 0 " +
                   num (w) + " " + num (h) + "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        }

        struct Bounds
        {
            double xmin = std::numeric_limits<double>::infinity ();
            double xmax = -std::numeric_limits<double>::infinity ();
            double ymin = std::numeric_limits<double>::infinity ();
            double ymax = -std::numeric_limits<double>::infinity ();

            void add (Vec2 p)
            {
                xmin = std::min (xmin, p.x);
                xmax = std::max (xmax, p.x);
                ymin = std::min (ymin, p.y);
                ymax = std::max (ymax, p.y);
            }
        };

        /// Equal-aspect world to screen mapping, y up.
        struct Frame
        {
            double scale = 1.0;
            double ox = 0.0;
            double oy = 0.0;

            explicit Frame (Bounds b)
            {
                const double span = std::max ({b.xmax - b.xmin, b.ymax - b.ymin, 1.0});
                scale = (kWidth - 2.0 * kMargin) / span;
                ox = kMargin - b.xmin * scale + 0.5 * (span - (b.xmax - b.xmin)) * scale;
                oy = kHeight - kMargin + b.ymin * scale - 0.5 * (span - (b.ymax - b.ymin)) * scale;
            }
            std::string xy (Vec2 p) const { return num (ox + p.x * scale) + "," + num (oy - p.y * scale); }
        };

        std::vector<Vec2> sample (const path::BezierPath &p, int n = 200)
        {
            std::vector<Vec2> pts;
            for (int i = 0; i <= n; ++i)
                pts.push_back (p.point (static_cast<double> (i) / n));
            return pts;
        }

        std::string polyline (const Frame &f, const std::vector<Vec2> &pts, std::string_view style)
        {
            std::string s = "<polyline fill=\"none\" " + std::string (style) + " points=\"";
            for (const auto &p : pts)
                s += f.xy (p) + " ";
            s += "\"/>\n";
            return s;
        }

        std::string_view state_color (coop::CoopState s)
        {
            switch (s)
            {
            case coop::CoopState::I:
                return "#2ca02c";
            case coop::CoopState::II:
                return "#d62728";
            case coop::CoopState::III:
                return "#1f77b4";
            case coop::CoopState::IV:
                return "#9467bd";
            case coop::CoopState::V:
                return "#bbbbbb";
            }
            return "#000000";
        }
    } // namespace

    std::string trajectory_svg (const path::BezierPath &planned, const std::optional<path::BezierPath> &intent,
                                const std::vector<sim::StepRecord> &records)
    {
        const auto planned_pts = sample (planned);
        std::vector<Vec2> driven;
        for (const auto &r : records)
            driven.push_back ({r.x, r.y});
        Bounds b;
        for (const auto &p : planned_pts)
            b.add (p);
        for (const auto &p : driven)
            b.add (p);
        std::vector<Vec2> intent_pts;
        if (intent)
        {
            intent_pts = sample (*intent);
            for (const auto &p : intent_pts)
                b.add (p);
        }
        const Frame f (b);

        std::string s = header (kWidth, kHeight);
        s += polyline (f, planned_pts, "stroke=\"#1f77b4\" stroke-width=\"2\"");
        if (intent)
            s += polyline (f, intent_pts, "stroke=\"#ff7f0e\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
        if (!driven.empty ())
            s += polyline (f, driven, "stroke=\"#d62728\" stroke-width=\"1.5\"");
        const auto goal = f.xy (planned.goal ());
        const auto comma = goal.find (',');
        s += "<circle cx=\"" + goal.substr (0, comma) + "\" cy=\"" + goal.substr (comma + 1) + "\" r=\"4\" fill=\"black\"/>\n";
        s += "<text x=\"10\" y=\"16\" fill=\"#1f77b4\">planned path</text>\n";
        if (intent)
            s += "<text x=\"110\" y=\"16\" fill=\"#ff7f0e\">driver intent</text>\n";
        s += "<text x=\"210\" y=\"16\" fill=\"#d62728\">trajectory</text>\n";
        s += "<text x=\"300\" y=\"16\">scale " + num (1.0 / f.scale) + " m/px</text>\n";
        s += "</svg>\n";
        return s;
    }

    std::string state_timeline_svg (const std::vector<sim::StepRecord> &records)
    {
        constexpr double w = 800.0;
        constexpr double h = 90.0;
        constexpr double x0 = 20.0;
        constexpr double strip_w = w - 2.0 * x0;
        std::string s = header (w, h);
        if (records.empty ())
            return s + "</svg>\n";
        const double t0 = records.front ().t;
        const double span = std::max (records.back ().t - t0, 1e-9);
        auto x_of = [&] (double t) { return x0 + (t - t0) / span * strip_w; };

        std::size_t i = 0;
        while (i < records.size ())
        {
            const auto state = records[i].state;
            std::size_t j = i + 1;
            while (j < records.size () && records[j].state == state)
                ++j;
            const double t_end = j < records.size () ? records[j].t : records.back ().t;
            const std::string color = state ? std::string (state_color (*state)) : std::string ("#f0f0f0");
            s += "<rect x=\"" + num (x_of (records[i].t)) + "\" y=\"20\" width=\"" + num (std::max (x_of (t_end) - x_of (records[i].t), 0.5)) +
                 "\" height=\"30\" fill=\"" + color + "\"/>\n";
            i = j;
        }
        double lx = x0;
        for (auto st : {coop::CoopState::I, coop::CoopState::II, coop::CoopState::III, coop::CoopState::IV, coop::CoopState::V})
        {
            s += "<rect x=\"" + num (lx) + "\" y=\"62\" width=\"12\" height=\"12\" fill=\"" + std::string (state_color (st)) + "\"/>\n";
            s += "<text x=\"" + num (lx + 16.0) + "\" y=\"72\">" + std::string (coop::to_string (st)) + "</text>\n";
            lx += 60.0;
        }
        s += "<text x=\"" + num (lx + 20.0) + "\" y=\"72\">t = " + num (t0) + " .. " + num (records.back ().t) + " s</text>\n";
        s += "</svg>\n";
        return s;
    }

    std::string phase_error_svg (const experiment::ExperimentReport &report)
    {
        constexpr double w = 640.0;
        constexpr double h = 360.0;
        constexpr double left = 60.0;
        constexpr double bottom = 320.0;
        constexpr double top = 30.0;
        constexpr std::array<std::string_view, 3> colors{"#7f7f7f", "#1f77b4", "#d62728"};

        double ymax = 0.0;
        for (const auto &c : report.conditions)
            for (const auto &p : c.phases)
                ymax = std::max (ymax, p.rms_e.mean + p.rms_e.stddev);
        if (!(ymax > 0.0))
            ymax = 1.0;
        auto y_of = [&] (double v) { return bottom - v / ymax * (bottom - top); };

        std::string s = header (w, h);
        s += "<line x1=\"" + num (left) + "\" y1=\"" + num (bottom) + "\" x2=\"" + num (w - 10.0) + "\" y2=\"" + num (bottom) +
             "\" stroke=\"black\"/>\n";
        s += "<line x1=\"" + num (left) + "\" y1=\"" + num (top) + "\" x2=\"" + num (left) + "\" y2=\"" + num (bottom) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"4\" y=\"" + num (top - 10.0) + "\">rms_e [m]</text>\n";
        s += "<text x=\"4\" y=\"" + num (top + 4.0) + "\">" + num (ymax) + "</text>\n";

        const double group_w = (w - left - 20.0) / 4.0;
        const double n = static_cast<double> (std::max<std::size_t> (report.conditions.size (), 1));
        const double bar_w = group_w * 0.8 / n;
        for (std::size_t pi = 0; pi < experiment::kPhases.size (); ++pi)
        {
            const double gx = left + 10.0 + static_cast<double> (pi) * group_w;
            s += "<text x=\"" + num (gx) + "\" y=\"" + num (bottom + 16.0) + "\">" + std::string (experiment::phase_label (experiment::kPhases[pi])) +
                 "</text>\n";
            for (std::size_t ci = 0; ci < report.conditions.size (); ++ci)
            {
                const auto &agg = report.conditions[ci].phases[pi].rms_e;
                const double x = gx + static_cast<double> (ci) * bar_w;
                const auto color = colors[static_cast<std::size_t> (report.conditions[ci].condition) % colors.size ()];
                s += "<rect x=\"" + num (x) + "\" y=\"" + num (y_of (agg.mean)) + "\" width=\"" + num (bar_w * 0.9) + "\" height=\"" +
                     num (bottom - y_of (agg.mean)) + "\" fill=\"" + std::string (color) + "\"/>\n";
                const double cx = x + bar_w * 0.45;
                s += "<line x1=\"" + num (cx) + "\" y1=\"" + num (y_of (agg.mean + agg.stddev)) + "\" x2=\"" + num (cx) + "\" y2=\"" +
                     num (y_of (std::max (agg.mean - agg.stddev, 0.0))) + "\" stroke=\"black\"/>\n";
            }
        }
        double lx = w - 200.0;
        for (const auto &c : report.conditions)
        {
            const auto color = colors[static_cast<std::size_t> (c.condition) % colors.size ()];
            s += "<rect x=\"" + num (lx) + "\" y=\"8\" width=\"12\" height=\"12\" fill=\"" + std::string (color) + "\"/>\n";
            s += "<text x=\"" + num (lx + 16.0) + "\" y=\"18\">" + std::string (1, assist::condition_name (c.condition)) + "</text>\n";
            lx += 50.0;
        }
        s += "</svg>\n";
        return s;
    }
} // namespace hscpark::cli::plot
