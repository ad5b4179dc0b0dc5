// SPDX-License-Identifier: Apache-2.0
//
// im3-kit: third-order intermodulation ACI analysis for multicarrier systems
// Copyright (C) 2026 The im3-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IM3_REPORT_HPP
#define IM3_REPORT_HPP

#include "im3/channel_plan.hpp"
#include "im3/im3_engine.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace im3::report
{

// First line of every CSV this tool writes.
inline constexpr std::string_view csv_version_line = "# im3-kit v1";

enum class OutputFormat
{
    Table,
    Csv,
    Json
};

// 10 log10(power / reference). power == reference gives 0 dB, power == 0 gives -inf.
double to_db(double power, double reference);

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

using Cell = std::variant<long long, double, bool, std::string>;

// A named-column result set rendered as CSV, JSON or an aligned text table.
struct Table
{
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

void write_csv(std::ostream &os, const Table &table);
void write_json(std::ostream &os, const Table &table);
void write_text(std::ostream &os, const Table &table);
void write(std::ostream &os, const Table &table, OutputFormat format);

// Plan files are JSON objects, either {"f0", "delta_f", "amplitudes"} for a uniform
// grid or {"frequencies", "amplitudes"} for arbitrary carriers placed by gridify.
// Errors are std::invalid_argument (malformed content, naming the field) or
// IncommensuratePlanError; load_plan also reports unreadable files.
ChannelPlan parse_plan(std::string_view json_text, double rel_tolerance = 1e-9);
ChannelPlan load_plan(const std::string &path, double rel_tolerance = 1e-9);
std::string plan_to_json(const ChannelPlan &plan);

// Profile rows: "n,power,power_normalized,is_pseudo". power_normalized is power / N^2.
Table profile_table(const ChannelPlan &plan, const AciProfile &profile);

// Reads the powers back from write_json(profile_table(...)).
std::vector<double> profile_powers_from_json(std::string_view json_text);

} // namespace im3::report

#endif
