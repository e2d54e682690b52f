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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hscpark::csv
{
    /// Decimal with 9 significant digits ("%.9g").
    [[nodiscard]] std::string format_number (double value);

    /// Splits one line on commas; no quoting (none of our formats need it).
    [[nodiscard]] std::vector<std::string> split_line (std::string_view line);

    /// Parses a full-string double; throws ConfigError naming `what` on failure.
    [[nodiscard]] double parse_number (std::string_view text, std::string_view what);

    struct Table
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;
        /// 1-based source line of each row, for diagnostics.
        std::vector<int> lines;

        /// Column index of `name`, or -1.
        [[nodiscard]] int column (std::string_view name) const noexcept;
    };

    /// Reads a header line plus rows. Blank lines are skipped; ragged rows throw ConfigError.
    [[nodiscard]] Table read_table (const std::filesystem::path &file);
    [[nodiscard]] Table parse_table (std::string_view text);

    /// Writes `content` to a sibling temp file and renames it over `target`.
    void write_file_atomic (const std::filesystem::path &target, std::string_view content);
} // namespace hscpark::csv
