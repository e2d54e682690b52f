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

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace hscpark
{
    /// splitmix64 finalizer.
    [[nodiscard]] constexpr std::uint64_t mix64 (std::uint64_t z) noexcept
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Seed for one (base, k1, k2, ...) coordinate; changing any key changes the stream.
    [[nodiscard]] constexpr std::uint64_t derive_seed (std::uint64_t base, std::initializer_list<std::uint64_t> keys) noexcept
    {
        std::uint64_t h = mix64 (base);
        for (auto k : keys)
            h = mix64 (h ^ mix64 (k + 0x632be59bd9b4e019ULL));
        return h;
    }

    /// Standard-normal draws on top of mt19937_64. The transform is spelled out here because
    /// std::normal_distribution differs between standard libraries.
    class NormalStream
    {
      public:
        explicit NormalStream (std::uint64_t seed) : engine_ (seed) {}

        double operator() () noexcept
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            // Box-Muller; u1 in (0, 1]
            const double u1 = (static_cast<double> (engine_ () >> 11) + 1.0) * 0x1.0p-53;
            const double u2 = static_cast<double> (engine_ () >> 11) * 0x1.0p-53;
            const double r = std::sqrt (-2.0 * std::log (u1));
            const double a = 2.0 * std::numbers::pi * u2;
            spare_ = r * std::sin (a);
            has_spare_ = true;
            return r * std::cos (a);
        }

        /// Uniform in [0, 1).
        double uniform () noexcept { return static_cast<double> (engine_ () >> 11) * 0x1.0p-53; }

      private:
        std::mt19937_64 engine_;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };
} // namespace hscpark
