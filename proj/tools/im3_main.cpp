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

#include "im3/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

int main(int argc, char **argv)
{
    using im3::cli::Command;
    using im3::report::OutputFormat;

    CLI::App app{"im3: third-order intermodulation ACI analysis for N carriers"};
    app.require_subcommand(1);

    im3::cli::RunConfig config;
    std::string sweep;

    app.add_option("--plan", config.plan_path, "JSON channel plan file");
    app.add_option("--channels", config.channels, "N equal unit-amplitude carriers (instead of --plan)");
    app.add_option("--rho1", config.rho1, "linear gain of the device");
    app.add_option("--rho3", config.rho3, "cubic coefficient of the device, 1/V^2");
    app.add_option("--trials", config.trials, "Monte-Carlo trials for the oracle");
    app.add_option("--seed", config.seed, "random seed");
    const std::map<std::string, OutputFormat> formats{
        {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
    app.add_option("--format", config.format, "table, csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
        ->type_name("FORMAT");
    app.add_option("--db-ref", config.db_reference, "power at 0 dB, V^2");
    app.add_option("--tolerance", config.rel_tolerance, "relative grid tolerance for frequency plans");
    app.add_option("--sweep", sweep, "N range lo..hi for the figure sweep");
    app.add_option("--threads", config.threads, "worker threads, 0 = all cores");
    app.add_flag("--independent", config.independent, "oracle: estimate the signal term from the trials");
    app.add_option("--out-dir", config.out_dir, "directory for figure CSV files");

    const std::pair<const char *, const char *> commands[] = {
        {"analyze", "per-channel ACI power of a plan"},
        {"gridify", "place a plan on a uniform grid with pseudo channels"},
        {"closed-form", "L_D, L_T and equal-power ACI for N channels"},
        {"oracle", "Monte-Carlo tone simulation against the analytic ACI"},
        {"qpsk", "QPSK band-power simulation against the analytic ACI"},
        {"figures", "write CSV data for all figures"},
    };
    for (const auto &[name, help] : commands)
        app.add_subcommand(name, help)->fallthrough();

    try
    {
        app.parse(argc, argv);
        if (!sweep.empty())
            im3::cli::parse_sweep(sweep, config);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "im3: error: " << e.what() << '\n';
        return 1;
    }

    config.command = *im3::cli::parse_command(app.get_subcommands().front()->get_name());
    return im3::cli::run(config, std::cout, std::cerr);
}
