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

#include <hscpark/coop_status.hpp>

#include <hscpark/error.hpp>

#include <cmath>
#include <string>

namespace hscpark::coop
{
    namespace
    {
        constexpr double kGridSnap = 1e-9;

        // Position of time t on the sample grid, snapped to the nearest index when within tolerance.
        double grid_position (const SampledSeries &s, double t) noexcept
        {
            const double pos = (t - s.t0) / s.dt;
            const double nearest = std::round (pos);
            return std::abs (pos - nearest) <= kGridSnap * std::max (1.0, std::abs (pos)) ? nearest : pos;
        }

        double product (const SampledSeries &s, std::size_t i) noexcept { return s.torque[i] * s.velocity[i]; }

        // Integral of the linear interpolant of the product over [a, b] in grid units, 0 <= a <= b <= n-1.
        double integrate_grid (const SampledSeries &s, double a, double b) noexcept
        {
            auto value_at = [&s] (double pos) {
                const auto i = static_cast<std::size_t> (std::floor (pos));
                const double frac = pos - static_cast<double> (i);
                if (frac == 0.0 || i + 1 >= s.torque.size ())
                    return product (s, i);
                return (1.0 - frac) * product (s, i) + frac * product (s, i + 1);
            };

            const double first_full = std::ceil (a);
            const double last_full = std::floor (b);
            if (first_full > last_full)
                return 0.5 * (value_at (a) + value_at (b)) * (b - a);

            double sum = 0.0;
            sum += 0.5 * (value_at (a) + value_at (first_full)) * (first_full - a);
            const auto lo = static_cast<std::size_t> (first_full);
            const auto hi = static_cast<std::size_t> (last_full);
            for (std::size_t i = lo; i < hi; ++i)
                sum += 0.5 * (product (s, i) + product (s, i + 1));
            sum += 0.5 * (value_at (last_full) + value_at (b)) * (b - last_full);
            return sum;
        }
    } // namespace

    void PseudoWorkConfig::validate () const
    {
        if (!(window > 0.0))
            throw ConfigError ("pseudo-work window must be > 0");
        if (!(gamma1_sq > 0.0) || !(gamma2_sq > 0.0))
            throw ConfigError ("pseudo-work thresholds must be > 0");
    }

    std::string_view to_string (CoopState s) noexcept
    {
        switch (s)
        {
        case CoopState::I:
            return "I";
        case CoopState::II:
            return "II";
        case CoopState::III:
            return "III";
        case CoopState::IV:
            return "IV";
        case CoopState::V:
            return "V";
        }
        return "?";
    }

    std::optional<CoopState> parse_state (std::string_view text) noexcept
    {
        for (auto s : {CoopState::I, CoopState::II, CoopState::III, CoopState::IV, CoopState::V})
            if (text == to_string (s))
                return s;
        return std::nullopt;
    }

    double pseudo_work (const SampledSeries &series, double t, double window)
    {
        if (!(window > 0.0) || !(series.dt > 0.0))
            throw ConfigError ("pseudo_work needs window > 0 and dt > 0");
        if (series.torque.size () != series.velocity.size ())
            throw ConfigError ("torque and velocity series differ in length");
        if (series.torque.empty ())
            throw InsufficientHistory ("no samples");
        const double a = grid_position (series, t - window);
        const double b = grid_position (series, t);
        const double last = static_cast<double> (series.torque.size () - 1);
        if (a < 0.0)
            throw InsufficientHistory ("window starts before the first sample");
        if (b > last)
            throw InsufficientHistory ("window ends after the last sample");
        return integrate_grid (series, a, b) * series.dt / window;
    }

    bool driver_has_initiative (double w_c, const PseudoWorkConfig &cfg) noexcept { return w_c >= cfg.gamma1_sq; }

    Intent intent_consistency (double w_c, double w_das, const PseudoWorkConfig &cfg) noexcept
    {
        const bool c_pos = w_c >= cfg.gamma1_sq;
        const bool c_neg = w_c <= -cfg.gamma1_sq;
        const bool d_pos = w_das >= cfg.gamma2_sq;
        const bool d_neg = w_das <= -cfg.gamma2_sq;
        if (c_pos && d_pos)
            return Intent::Consistent;
        if ((c_pos && d_neg) || (c_neg && d_pos))
            return Intent::Inconsistent;
        return Intent::Indeterminate;
    }

    CoopState classify (double w_c, double w_das, const PseudoWorkConfig &cfg) noexcept
    {
        if (std::abs (w_c) < cfg.gamma1_sq || std::abs (w_das) < cfg.gamma2_sq)
            return CoopState::V;
        const bool driver_positive = w_c >= cfg.gamma1_sq;
        const bool assist_positive = w_das >= cfg.gamma2_sq;
        if (driver_positive)
            return assist_positive ? CoopState::I : CoopState::II;
        return assist_positive ? CoopState::III : CoopState::IV;
    }

    Occupancy state_occupancy (std::span<const CoopState> timeline)
    {
        if (timeline.empty ())
            throw EmptyTimeline ("state_occupancy needs at least one sample");
        std::array<std::size_t, kStateCount> counts{};
        for (auto s : timeline)
            ++counts[static_cast<std::size_t> (s)];
        Occupancy occ;
        const auto n = static_cast<double> (timeline.size ());
        for (std::size_t i = 0; i < kStateCount; ++i)
            occ.fraction[i] = static_cast<double> (counts[i]) / n;
        return occ;
    }
} // namespace hscpark::coop
