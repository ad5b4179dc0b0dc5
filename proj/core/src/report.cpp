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

#include "im3/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace im3::report
{

using nlohmann::json;

double to_db(double power, double reference)
{
    if (!(reference > 0.0))
        throw std::invalid_argument("to_db: reference power must be positive");
    return 10.0 * std::log10(power / reference);
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("Table " + name + ": row width does not match the column count");
    rows.push_back(std::move(row));
}

namespace
{

std::string cell_text(const Cell &c)
{
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else
                return v;
        },
        c);
}

std::string cell_display(const Cell &c)
{
    if (const double *d = std::get_if<double>(&c))
    {
        if (!std::isfinite(*d))
            return format_number(*d);
        std::ostringstream os;
        os << std::setprecision(6) << *d;
        return os.str();
    }
    return cell_text(c);
}

json cell_json(const Cell &c)
{
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
            {
                if (!std::isfinite(v))
                    return nullptr;
            }
            return v;
        },
        c);
}

} // namespace

void write_csv(std::ostream &os, const Table &table)
{
    os << csv_version_line << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto &row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream &os, const Table &table)
{
    json doc;
    doc["table"] = table.name;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto &row : table.rows)
    {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

void write_text(std::ostream &os, const Table &table)
{
    std::vector<std::size_t> width(table.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        width[i] = table.columns[i].size();
    for (const auto &row : table.rows)
    {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            line.push_back(cell_display(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
        text.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
        os << '\n';
    };
    emit(table.columns);
    for (const auto &line : text)
        emit(line);
}

void write(std::ostream &os, const Table &table, OutputFormat format)
{
    switch (format)
    {
    case OutputFormat::Csv:
        write_csv(os, table);
        break;
    case OutputFormat::Json:
        write_json(os, table);
        break;
    case OutputFormat::Table:
        write_text(os, table);
        break;
    }
}

namespace
{

std::vector<double> number_array(const json &doc, const char *field)
{
    if (!doc.contains(field))
        throw std::invalid_argument(std::string("plan: missing field '") + field + "'");
    const json &arr = doc.at(field);
    if (!arr.is_array())
        throw std::invalid_argument(std::string("plan: field '") + field + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto &v : arr)
    {
        if (!v.is_number())
            throw std::invalid_argument(std::string("plan: field '") + field + "' must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const json &doc, const char *field)
{
    if (!doc.contains(field))
        throw std::invalid_argument(std::string("plan: missing field '") + field + "'");
    if (!doc.at(field).is_number())
        throw std::invalid_argument(std::string("plan: field '") + field + "' must be a number");
    return doc.at(field).get<double>();
}

} // namespace

ChannelPlan parse_plan(std::string_view json_text, double rel_tolerance)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("plan: malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("plan: top level must be a JSON object");

    const auto amplitudes = number_array(doc, "amplitudes");
    if (doc.contains("frequencies"))
    {
        const auto freqs = number_array(doc, "frequencies");
        if (freqs.size() != amplitudes.size())
            throw std::invalid_argument("plan: fields 'frequencies' and 'amplitudes' differ in length");
        return gridify(freqs, amplitudes, rel_tolerance);
    }
    return ChannelPlan(number_field(doc, "f0"), number_field(doc, "delta_f"), amplitudes);
}

ChannelPlan load_plan(const std::string &path, double rel_tolerance)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("plan: cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str(), rel_tolerance);
}

std::string plan_to_json(const ChannelPlan &plan)
{
    json doc;
    doc["f0"] = plan.f0();
    doc["delta_f"] = plan.delta_f();
    doc["amplitudes"] = plan.amplitudes();
    return doc.dump();
}

Table profile_table(const ChannelPlan &plan, const AciProfile &profile)
{
    Table t;
    t.name = "profile";
    t.columns = {"n", "power", "power_normalized", "is_pseudo"};
    const double n2 = static_cast<double>(plan.size()) * plan.size();
    const double to_raw = profile.normalization == Normalization::PerNSquared ? n2 : 1.0;
    for (int n = 1; n <= plan.size(); ++n)
    {
        const double p = profile.powers[static_cast<std::size_t>(n - 1)] * to_raw;
        t.add_row({static_cast<long long>(n), p, p / n2, plan.channel(n).is_pseudo});
    }
    return t;
}

std::vector<double> profile_powers_from_json(std::string_view json_text)
{
    const json doc = json::parse(json_text);
    std::vector<double> out;
    for (const auto &row : doc.at("rows"))
        out.push_back(row.at("power").get<double>());
    return out;
}

} // namespace im3::report
