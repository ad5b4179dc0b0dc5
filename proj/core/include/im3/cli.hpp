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

#ifndef IM3_CLI_HPP
#define IM3_CLI_HPP

#include "im3/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace im3::cli
{

enum class Command
{
    Analyze,
    Gridify,
    ClosedForm,
    Oracle,
    Qpsk,
    Figures
};

std::optional<Command> parse_command(const std::string &name);
const char *command_name(Command c);

struct RunConfig
{
    Command command = Command::Analyze;
    std::string plan_path;     // JSON plan file; empty means use `channels`
    int channels = 0;          // equal-power shortcut: N unit-amplitude carriers
    double rho1 = 0.0;
    double rho3 = 1.0;
    int trials = 2000;
    std::uint64_t seed = 1;
    report::OutputFormat format = report::OutputFormat::Table;
    double db_reference = 1.0; // volts^2 at 0 dB
    double rel_tolerance = 1e-9;
    int sweep_lo = 3;
    int sweep_hi = 99;
    unsigned threads = 1;      // 0 = hardware concurrency
    bool independent = false;  // oracle: estimate the signal term instead of subtracting it
    std::string out_dir = "figures";

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Parses "lo..hi" into config.sweep_lo / sweep_hi.
void parse_sweep(const std::string &text, RunConfig &config);

// Runs one command. Results go to out, diagnostics to err. Returns 0 on success and 1
// after printing an error message; never throws for bad input.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace im3::cli

#endif
