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

#include "im3/closed_form.hpp"
#include "im3/im3_engine.hpp"
#include "im3/qpsk_sim.hpp"
#include "im3/tone_oracle.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace im3::cli
{

using report::Cell;
using report::Table;

std::optional<Command> parse_command(const std::string &name)
{
    if (name == "analyze")
        return Command::Analyze;
    if (name == "gridify")
        return Command::Gridify;
    if (name == "closed-form")
        return Command::ClosedForm;
    if (name == "oracle")
        return Command::Oracle;
    if (name == "qpsk")
        return Command::Qpsk;
    if (name == "figures")
        return Command::Figures;
    return std::nullopt;
}

const char *command_name(Command c)
{
    switch (c)
    {
    case Command::Analyze:
        return "analyze";
    case Command::Gridify:
        return "gridify";
    case Command::ClosedForm:
        return "closed-form";
    case Command::Oracle:
        return "oracle";
    case Command::Qpsk:
        return "qpsk";
    case Command::Figures:
        return "figures";
    }
    return "?";
}

void RunConfig::validate() const
{
    auto finite = [](double v, const char *field) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string("config: field '") + field + "' must be finite");
    };
    finite(rho1, "rho1");
    finite(rho3, "rho3");
    finite(db_reference, "db_ref");
    finite(rel_tolerance, "rel_tolerance");
    if (!(db_reference > 0.0))
        throw std::invalid_argument("config: field 'db_ref' must be positive");
    if (trials < 1)
        throw std::invalid_argument("config: field 'trials' must be >= 1");
    if (channels < 0)
        throw std::invalid_argument("config: field 'channels' must be >= 0");
    if (sweep_lo < 3 || sweep_hi < sweep_lo)
        throw std::invalid_argument("config: field 'sweep' must satisfy 3 <= lo <= hi");
    if (!plan_path.empty() && !std::filesystem::exists(plan_path))
        throw std::invalid_argument("config: field 'plan' names a missing file '" + plan_path + "'");
}

void parse_sweep(const std::string &text, RunConfig &config)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("config: field 'sweep' must look like lo..hi");
    try
    {
        std::size_t used = 0;
        const std::string lo = text.substr(0, dots);
        const std::string hi = text.substr(dots + 2);
        config.sweep_lo = std::stoi(lo, &used);
        if (used != lo.size())
            throw std::invalid_argument("trailing text");
        config.sweep_hi = std::stoi(hi, &used);
        if (used != hi.size())
            throw std::invalid_argument("trailing text");
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: field 'sweep' must look like lo..hi with integer bounds");
    }
}

namespace
{

NonlinearityModel model_of(const RunConfig &c)
{
    NonlinearityModel m{c.rho1, c.rho3};
    m.validate();
    return m;
}

ChannelPlan equal_plan(int n)
{
    return ChannelPlan(static_cast<double>(std::max(16, n)), 1.0, std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

ChannelPlan resolve_plan(const RunConfig &c)
{
    if (!c.plan_path.empty())
        return report::load_plan(c.plan_path, c.rel_tolerance);
    if (c.channels > 0)
        return equal_plan(c.channels);
    throw std::invalid_argument("config: either 'plan' or 'channels' is required");
}

// The waveform engines need f0 > (N-1)*delta_f on an integer grid; channel indices and
// amplitudes, which fix every ACI value, are kept.
ChannelPlan simulation_plan(const ChannelPlan &plan)
{
    return plan.rehomed_for_simulation();
}

void warn_if_folded(const ChannelPlan &plan, std::ostream &err)
{
    if (!plan.has_clean_im3_band())
        err << "im3: warning: f0 <= (N-1)*delta_f; some IM3 products of this plan sit at non-positive "
               "frequencies (index-space results are unaffected)\n";
}

double db(double p, const RunConfig &c)
{
    return report::to_db(p, c.db_reference);
}

Table analyze(const RunConfig &c, std::ostream &err)
{
    const ChannelPlan plan = resolve_plan(c);
    warn_if_folded(plan, err);
    const NonlinearityModel model = model_of(c);
    const AciProfile profile = aci_profile(plan, model, Normalization::None, c.threads);
    Table t = report::profile_table(plan, profile);
    if (c.format == report::OutputFormat::Csv)
        return t;
    t.columns.push_back("power_db");
    t.columns.push_back("signal_amplitude");
    for (int n = 1; n <= plan.size(); ++n)
    {
        auto &row = t.rows[static_cast<std::size_t>(n - 1)];
        row.push_back(db(profile.powers[static_cast<std::size_t>(n - 1)], c));
        row.push_back(signal_term_amplitude(plan, model, n));
    }
    return t;
}

Table gridify_table(const RunConfig &c, std::ostream &err)
{
    const ChannelPlan plan = resolve_plan(c);
    warn_if_folded(plan, err);
    Table t;
    t.name = "plan";
    t.columns = {"index", "frequency_hz", "amplitude", "is_pseudo"};
    for (const auto &ch : plan.channels())
        t.add_row({static_cast<long long>(ch.index), ch.center_frequency, ch.amplitude, ch.is_pseudo});
    return t;
}

int channel_count(const RunConfig &c)
{
    if (c.channels > 0)
        return c.channels;
    if (!c.plan_path.empty())
        return resolve_plan(c).size();
    throw std::invalid_argument("config: field 'channels' is required");
}

Table counts_table(int N, double rho3)
{
    Table t;
    t.name = "counts";
    t.columns = {"n", "L_D", "L_T", "P"};
    for (int n = 1; n <= N; ++n)
    {
        const auto cp = closed_form::counts(N, n);
        t.add_row({static_cast<long long>(n), cp.l_d, cp.l_t, closed_form::equal_power_aci(N, n, 1.0, rho3)});
    }
    return t;
}

Table sweep_table(int lo, int hi)
{
    Table t;
    t.name = "sweep";
    t.columns = {"N", "max_normalized", "ratio_max_min"};
    for (int N = lo; N <= hi; ++N)
        t.add_row({static_cast<long long>(N), closed_form::max_normalized(N), closed_form::ratio_max_min(N)});
    return t;
}

Table oracle_table(const RunConfig &c)
{
    const ChannelPlan plan = simulation_plan(resolve_plan(c));
    const NonlinearityModel model = model_of(c);
    const SimulationGrid grid = SimulationGrid::for_plan(plan);
    const auto removal = c.independent ? SignalRemoval::Estimated : SignalRemoval::Analytic;
    const auto mc = measure_aci_profile_mc(plan, model, c.trials, c.seed, grid, removal, c.threads);
    Table t;
    t.name = "oracle";
    t.columns = {"n", "analytic", "mc_mean", "mc_stderr"};
    for (int n = 1; n <= plan.size(); ++n)
    {
        const auto &e = mc[static_cast<std::size_t>(n - 1)];
        t.add_row({static_cast<long long>(n), aci_power(plan, model, n), e.mean, e.standard_error});
    }
    return t;
}

Table qpsk_report_table(const BandPowerReport &r, const RunConfig &c, bool with_analytic)
{
    Table t;
    t.name = "qpsk";
    t.columns = {"channel", "power_db", "power_db_normalized"};
    if (with_analytic)
        t.columns.push_back("analytic_db");
    for (std::size_t i = 0; i < r.per_channel_power.size(); ++i)
    {
        const double norm = r.normalized_to_center.empty() ? std::nan("") : db(r.normalized_to_center[i], c);
        std::vector<Cell> row{static_cast<long long>(i + 1), db(r.per_channel_power[i], c), norm};
        if (with_analytic)
            row.emplace_back(db(r.analytic_power[i], c));
        t.add_row(std::move(row));
    }
    return t;
}

BandPowerReport run_qpsk(const ChannelPlan &resolved, const RunConfig &c)
{
    const ChannelPlan plan = simulation_plan(resolved);
    QpskConfig cfg = QpskConfig::defaults_for(plan);
    cfg.seed = c.seed;
    return measure_qpsk_aci(plan, model_of(c), cfg, cfg.grid(), SignalProjection::AnalyticGain, c.threads);
}

Table waveform_table(const std::vector<double> &t, const std::vector<double> &v)
{
    Table out;
    out.name = "waveform";
    out.columns = {"t", "value"};
    for (std::size_t i = 0; i < t.size(); ++i)
        out.add_row({t[i], v[i]});
    return out;
}

Table spectrum_table(const std::vector<double> &f, const std::vector<double> &p, double f_limit, const RunConfig &c)
{
    Table out;
    out.name = "spectrum";
    out.columns = {"freq_hz", "power_db"};
    for (std::size_t i = 0; i < f.size() && f[i] <= f_limit; ++i)
        out.add_row({f[i], db(p[i], c)});
    return out;
}

Table figures(const RunConfig &c)
{
    namespace fs = std::filesystem;
    const fs::path dir(c.out_dir);
    fs::create_directories(dir);
    const NonlinearityModel model = model_of(c);

    Table index;
    index.name = "figures";
    index.columns = {"file", "rows"};
    auto save = [&](const std::string &name, const Table &t) {
        std::ofstream os(dir / name);
        if (!os)
            throw std::runtime_error("figures: cannot write '" + (dir / name).string() + "'");
        report::write_csv(os, t);
        index.add_row({name, static_cast<long long>(t.rows.size())});
    };

    // Waveforms and spectra of three equal tones through the device.
    {
        const ChannelPlan plan = equal_plan(3);
        const SimulationGrid grid = SimulationGrid::for_plan(plan);
        const Fig1Data d = emit_fig1_data(plan, PhaseRealization::draw(c.seed, 0, plan.size()), model, grid);
        const double f_limit = d.frequency.back();
        save("fig1_x_waveform.csv", waveform_table(d.time, d.x_waveform));
        save("fig1_x_spectrum.csv", spectrum_table(d.frequency, d.x_spectrum, f_limit, c));
        save("fig1_y3_waveform.csv", waveform_table(d.time, d.y3_waveform));
        save("fig1_y3_spectrum.csv", spectrum_table(d.frequency, d.y3_spectrum, f_limit, c));
        save("fig1_intermod_waveform.csv", waveform_table(d.time, d.intermod_waveform));
        save("fig1_intermod_spectrum.csv", spectrum_table(d.frequency, d.intermod_spectrum, f_limit, c));
    }

    // Per-channel ACI profiles of equal-power plans.
    const std::pair<int, int> profiles[] = {{2, 9}, {3, 10}, {4, 31}, {5, 99}};
    for (const auto &[fig, N] : profiles)
    {
        const ChannelPlan plan = equal_plan(N);
        const AciProfile p = aci_profile(plan, model, Normalization::None, c.threads);
        save("fig" + std::to_string(fig) + "_profile_N" + std::to_string(N) + ".csv", report::profile_table(plan, p));
    }

    save("fig6_7_sweep.csv", sweep_table(c.sweep_lo, c.sweep_hi));

    // QPSK spectra for five carriers.
    {
        const ChannelPlan plan = equal_plan(5);
        QpskConfig cfg = QpskConfig::defaults_for(plan);
        cfg.seed = c.seed;
        cfg.num_symbols = 1024;
        const QpskSpectra s = qpsk_spectra(plan, model, cfg, cfg.grid(), c.threads);
        const double f_limit = 4.0 * plan.frequency(plan.size());
        save("fig8_x_spectrum.csv", spectrum_table(s.frequency, s.x_spectrum, f_limit, c));
        save("fig8_y3_spectrum.csv", spectrum_table(s.frequency, s.y3_spectrum, f_limit, c));
        save("fig8_intermod_spectrum.csv", spectrum_table(s.frequency, s.intermod_spectrum, f_limit, c));
    }

    save("fig9_qpsk_N9.csv", qpsk_report_table(run_qpsk(equal_plan(9), c), c, false));
    return index;
}

Table dispatch(const RunConfig &c, std::ostream &err)
{
    switch (c.command)
    {
    case Command::Analyze:
        return analyze(c, err);
    case Command::Gridify:
        return gridify_table(c, err);
    case Command::ClosedForm:
        return counts_table(channel_count(c), c.rho3);
    case Command::Oracle:
        return oracle_table(c);
    case Command::Qpsk:
        return qpsk_report_table(run_qpsk(resolve_plan(c), c), c, c.format != report::OutputFormat::Csv);
    case Command::Figures:
        return figures(c);
    }
    throw std::logic_error("unknown command");
}

} // namespace

int run(const RunConfig &config, std::ostream &out, std::ostream &err)
{
    try
    {
        config.validate();
        const Table t = dispatch(config, err);
        report::write(out, t, config.format);
        return 0;
    }
    catch (const std::exception &e)
    {
        err << "im3: error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace im3::cli
