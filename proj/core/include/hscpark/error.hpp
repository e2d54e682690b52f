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

#include <stdexcept>
#include <string>

namespace hscpark
{
    /// Base of every exception thrown by the library.
    class Error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    /// No tangent-magnitude pair satisfies the curvature bound.
    class Infeasible : public Error
    {
      public:
        using Error::Error;
    };

    /// |B'(u)| fell below 1e-12; the control polygon has a cusp at u.
    class DegenerateDerivative : public Error
    {
      public:
        using Error::Error;
    };

    /// A pseudo-work window reaches back before the first sample.
    class InsufficientHistory : public Error
    {
      public:
        using Error::Error;
    };

    class EmptyTimeline : public Error
    {
      public:
        using Error::Error;
    };

    class EmptyLog : public Error
    {
      public:
        using Error::Error;
    };

    /// The scenario's parking path could not be planned.
    class PlanInfeasible : public Error
    {
      public:
        using Error::Error;
    };

    /// A simulated state became non-finite.
    class NumericalDivergence : public Error
    {
      public:
        using Error::Error;
    };

    /// Invalid parameter set; thrown by the validate() members and the config loader.
    class ConfigError : public Error
    {
      public:
        using Error::Error;
    };
} // namespace hscpark
