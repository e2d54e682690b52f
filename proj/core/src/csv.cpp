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

#include <hscpark/csv.hpp>

#include <hscpark/error.hpp>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace hscpark::csv
{
    std::string format_number (double value)
    {
        char buf[40];
        if (value == 0.0)
            value = 0.0; // print "-0" as "0"
        const int n = std::snprintf (buf, sizeof buf, "%.9g", value);
        return std::string (buf, static_cast<std::size_t> (n));
    }

    std::vector<std::string> split_line (std::string_view line)
    {
        if (!line.empty () && line.back () == '\r')
            line.remove_suffix (1);
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true)
        {
            const auto comma = line.find (',', start);
            if (comma == std::string_view::npos)
            {
                out.emplace_back (line.substr (start));
                break;
            }
            out.emplace_back (line.substr (start, comma - start));
            start = comma + 1;
        }
        return out;
    }

    double parse_number (std::string_view text, std::string_view what)
    {
        while (!text.empty () && (text.front () == ' ' || text.front () == '\t'))
            text.remove_prefix (1);
        while (!text.empty () && (text.back () == ' ' || text.back () == '\t'))
            text.remove_suffix (1);
        double value = 0.0;
        const auto *first = text.data ();
        const auto *last = text.data () + text.size ();
        if (!text.empty () && text.front () == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars (first, last, value);
        if (text.empty () || ec != std::errc{} || ptr != last || !std::isfinite (value))
            throw ConfigError ("invalid number for " + std::string (what) + ": '" + std::string (text) + "'");
        return value;
    }

    int Table::column (std::string_view name) const noexcept
    {
        for (std::size_t i = 0; i < header.size (); ++i)
            if (header[i] == name)
                return static_cast<int> (i);
        return -1;
    }

    Table parse_table (std::string_view text)
    {
        Table table;
        int line_no = 0;
        bool have_header = false;
        std::size_t pos = 0;
        while (pos <= text.size ())
        {
            auto eol = text.find ('\n', pos);
            if (eol == std::string_view::npos)
                eol = text.size ();
            std::string_view line = text.substr (pos, eol - pos);
            pos = eol + 1;
            ++line_no;
            if (!line.empty () && line.back () == '\r')
                line.remove_suffix (1);
            if (line.find_first_not_of (" \t") == std::string_view::npos)
            {
                if (eol == text.size ())
                    break;
                continue;
            }
            auto fields = split_line (line);
            if (!have_header)
            {
                table.header = std::move (fields);
                have_header = true;
            }
            else
            {
                if (fields.size () != table.header.size ())
                    throw ConfigError ("line " + std::to_string (line_no) + ": expected " + std::to_string (table.header.size ()) +
                                       " fields, found " + std::to_string (fields.size ()));
                table.rows.push_back (std::move (fields));
                table.lines.push_back (line_no);
            }
            if (eol == text.size ())
                break;
        }
        if (!have_header)
            throw ConfigError ("empty CSV input");
        return table;
    }

    Table read_table (const std::filesystem::path &file)
    {
        std::ifstream in (file, std::ios::binary);
        if (!in)
            throw ConfigError ("cannot open " + file.string ());
        std::ostringstream ss;
        ss << in.rdbuf ();
        return parse_table (ss.str ());
    }

    void write_file_atomic (const std::filesystem::path &target, std::string_view content)
    {
        namespace fs = std::filesystem;
        const fs::path dir = target.has_parent_path () ? target.parent_path () : fs::path (".");
        fs::create_directories (dir);
        fs::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out (tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error ("cannot write " + tmp.string ());
            out.write (content.data (), static_cast<std::streamsize> (content.size ()));
            out.flush ();
            if (!out)
            {
                out.close ();
                std::error_code ec;
                fs::remove (tmp, ec);
                throw Error ("write failed for " + tmp.string ());
            }
        }
        fs::rename (tmp, target);
    }
} // namespace hscpark::csv
