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

#include <benchmark/benchmark.h>

#include <hscpark/bezier.hpp>
#include <hscpark/coop_status.hpp>
#include <hscpark/planner.hpp>
#include <hscpark/sim.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace hscpark;

namespace
{
    void BM_PlanCanonical (benchmark::State &state)
    {
        const auto s = sim::canonical_scenario ();
        for (auto _ : state)
            benchmark::DoNotOptimize (path::plan_parking_path (s.start, s.goal, s.planner));
    }
    BENCHMARK (BM_PlanCanonical)->Unit (benchmark::kMillisecond);

    void BM_ProjectOntoPath (benchmark::State &state)
    {
        const auto s = sim::canonical_scenario ();
        const auto p = path::plan_parking_path (s.start, s.goal, s.planner);
        double u = 0.0;
        for (auto _ : state)
        {
            u = std::fmod (u + 0.013, 1.0);
            const Vec2 q = p.point (u) + Vec2{0.2, -0.1};
            benchmark::DoNotOptimize (path::project_lateral (p, q, u));
        }
    }
    BENCHMARK (BM_ProjectOntoPath);

    void BM_ExpertTrial (benchmark::State &state)
    {
        const auto s = sim::canonical_scenario ();
        const sim::DriverSetup driver{driver::SkillAnchors::defaults ().at (1.0), std::nullopt};
        assist::AssistConfig assist;
        assist.gain_cs = static_cast<double> (state.range (0)) / 2.0;
        for (auto _ : state)
            benchmark::DoNotOptimize (sim::run_trial (s, driver, assist));
    }
    BENCHMARK (BM_ExpertTrial)->Arg (0)->Arg (2)->Unit (benchmark::kMillisecond);

    void BM_ClassifyTrace (benchmark::State &state)
    {
        const auto n = static_cast<std::size_t> (state.range (0));
        const double dt = 0.01;
        std::vector<double> tau_c (n), tau_das (n), v (n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double t = static_cast<double> (i) * dt;
            tau_c[i] = std::sin (t);
            tau_das[i] = std::cos (0.7 * t);
            v[i] = std::sin (1.3 * t);
        }
        const coop::PseudoWorkConfig cfg;
        const coop::SampledSeries c{tau_c, v, 0.0, dt};
        const coop::SampledSeries d{tau_das, v, 0.0, dt};
        const auto first = static_cast<std::size_t> (std::ceil (cfg.window / dt));
        for (auto _ : state)
        {
            std::size_t counts[coop::kStateCount]{};
            for (std::size_t i = first; i < n; ++i)
            {
                const double t = static_cast<double> (i) * dt;
                ++counts[static_cast<std::size_t> (coop::classify (coop::pseudo_work (c, t, cfg.window), coop::pseudo_work (d, t, cfg.window), cfg))];
            }
            benchmark::DoNotOptimize (counts);
        }
        state.SetItemsProcessed (static_cast<std::int64_t> (state.iterations ()) * static_cast<std::int64_t> (n - first));
    }
    BENCHMARK (BM_ClassifyTrace)->Arg (1000)->Arg (100000);
} // namespace

BENCHMARK_MAIN ();
