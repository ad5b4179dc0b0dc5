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

#include "im3/tone_oracle.hpp"

#include "im3/im3_engine.hpp"
#include "im3/random.hpp"
#include "im3/spectrum.hpp"
#include "parallel.hpp"
#include "tone_table.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace im3
{

PhaseRealization PhaseRealization::draw(std::uint64_t seed, std::uint64_t trial, int channels)
{
    return PhaseRealization{draw_phases(seed, trial, channels), seed};
}

namespace
{

bool near_integer(double v)
{
    return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v));
}

// DFT bin of f, or throws when f is off-bin or outside (0, fs/2).
std::size_t bin_of(double f, const SimulationGrid &grid)
{
    const double cycles = f * grid.duration();
    if (!near_integer(cycles))
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << "frequency " << f << " Hz is not on a DFT bin of the simulation grid";
        throw std::invalid_argument(msg.str());
    }
    const auto bin = static_cast<long long>(std::llround(cycles));
    if (bin <= 0 || 2 * static_cast<std::size_t>(bin) >= grid.num_samples)
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << "frequency " << f << " Hz lies outside (0, fs/2)";
        throw std::invalid_argument(msg.str());
    }
    return static_cast<std::size_t>(bin);
}

std::vector<std::size_t> carrier_bins(const ChannelPlan &plan, const SimulationGrid &grid)
{
    std::vector<std::size_t> bins;
    bins.reserve(static_cast<std::size_t>(plan.size()));
    for (const auto &ch : plan.channels())
        bins.push_back(bin_of(ch.center_frequency, grid));
    return bins;
}

std::complex<double> bin_phasor(std::span<const double> y, const detail::ToneTable &table, std::size_t bin)
{
    const std::size_t L = table.length();
    double re = 0.0;
    double im = 0.0;
    std::size_t r = 0;
    for (std::size_t m = 0; m < y.size(); ++m)
    {
        re += y[m] * table.cos(r);
        im -= y[m] * table.sin(r);
        r += bin;
        if (r >= L)
            r -= L;
    }
    const double scale = 2.0 / static_cast<double>(L);
    return {re * scale, im * scale};
}

void synthesize_into(std::vector<double> &out, const ChannelPlan &plan, std::span<const double> phases,
                     std::span<const std::size_t> bins, const detail::ToneTable &table)
{
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto &ch : plan.channels())
    {
        if (ch.is_pseudo)
            continue;
        const auto i = static_cast<std::size_t>(ch.index - 1);
        detail::add_tone(out, table, bins[i], ch.amplitude, phases[i]);
    }
}

void cube_in_place(std::vector<double> &x, const NonlinearityModel &model)
{
    for (auto &v : x)
        v = model.rho1 * v + model.rho3 * v * v * v;
}

void require_oracle_ready(const ChannelPlan &plan, const NonlinearityModel &model, const SimulationGrid &grid)
{
    model.validate();
    if (!plan.has_clean_im3_band())
        throw std::invalid_argument("tone oracle: plan needs f0 > (N-1)*delta_f so IM3 products stay in "
                                    "band order; use ChannelPlan::rehomed_for_simulation()");
    grid.validate(plan);
}

// Output phasor at every carrier for one trial.
std::vector<std::complex<double>> trial_phasors(const ChannelPlan &plan, const NonlinearityModel &model,
                                                std::span<const double> phases, std::span<const std::size_t> bins,
                                                const detail::ToneTable &table)
{
    std::vector<double> y(table.length());
    synthesize_into(y, plan, phases, bins, table);
    cube_in_place(y, model);
    std::vector<std::complex<double>> out;
    out.reserve(bins.size());
    for (std::size_t b : bins)
        out.push_back(bin_phasor(y, table, b));
    return out;
}

struct TrialBatch
{
    std::vector<std::vector<double>> phases;
    std::vector<std::vector<std::complex<double>>> phasors;
};

TrialBatch run_trials(const ChannelPlan &plan, const NonlinearityModel &model, int trials, std::uint64_t seed,
                      const SimulationGrid &grid, unsigned threads)
{
    if (trials < 1)
        throw std::invalid_argument("Monte-Carlo: trials must be >= 1");
    require_oracle_ready(plan, model, grid);
    const auto bins = carrier_bins(plan, grid);
    const detail::ToneTable table(grid.num_samples);

    TrialBatch batch;
    batch.phases.resize(static_cast<std::size_t>(trials));
    batch.phasors.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(batch.phases.size(), threads, [&](std::size_t t) {
        batch.phases[t] = draw_phases(seed, t, plan.size());
        batch.phasors[t] = trial_phasors(plan, model, batch.phases[t], bins, table);
    });
    return batch;
}

McEstimate summarize(const std::vector<double> &samples)
{
    McEstimate est;
    const auto M = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    est.mean = sum / M;
    if (samples.size() > 1)
    {
        double ss = 0.0;
        for (double v : samples)
            ss += (v - est.mean) * (v - est.mean);
        est.standard_error = std::sqrt(ss / (M - 1.0) / M);
    }
    return est;
}

std::vector<double> in_phase_means(const TrialBatch &batch, int channels)
{
    std::vector<double> g(static_cast<std::size_t>(channels), 0.0);
    for (std::size_t t = 0; t < batch.phasors.size(); ++t)
        for (std::size_t k = 0; k < g.size(); ++k)
            g[k] += (batch.phasors[t][k] * std::polar(1.0, -batch.phases[t][k])).real();
    for (auto &v : g)
        v /= static_cast<double>(batch.phasors.size());
    return g;
}

} // namespace

SimulationGrid SimulationGrid::for_plan(const ChannelPlan &plan)
{
    const double df = plan.delta_f();
    const double offset = plan.f0() / df;
    if (!near_integer(offset) || offset < 1.0)
        throw std::invalid_argument("SimulationGrid: f0 must be a positive integer multiple of delta_f");
    const double f_max_units = std::round(offset) + (plan.size() - 1);
    const double needed = 24.0 * f_max_units;
    double units = 1.0;
    while (units < needed)
        units *= 2.0;
    SimulationGrid grid;
    grid.sample_rate = units * df;
    grid.num_samples = static_cast<std::size_t>(units);
    return grid;
}

void SimulationGrid::validate(const ChannelPlan &plan) const
{
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate) || num_samples == 0)
        throw std::invalid_argument("SimulationGrid: sample_rate and num_samples must be positive");
    if (num_samples > max_simulation_samples)
        throw std::invalid_argument("SimulationGrid: num_samples exceeds 2^24");
    const double f_max = plan.frequency(plan.size());
    if (!(sample_rate > 6.0 * f_max))
        throw std::invalid_argument("SimulationGrid: sample_rate must exceed 6 f_max so the cubic does not alias");
    if (plan.f0() <= 0.0)
        throw std::invalid_argument("SimulationGrid: carrier frequencies must be positive");
    if (!near_integer(plan.delta_f() * duration()))
        throw std::invalid_argument("SimulationGrid: duration * delta_f must be an integer");
    for (const auto &ch : plan.channels())
        bin_of(ch.center_frequency, *this);
}

std::vector<double> synthesize(const ChannelPlan &plan, const PhaseRealization &phases, const SimulationGrid &grid)
{
    if (phases.phases.size() != static_cast<std::size_t>(plan.size()))
        throw std::invalid_argument("synthesize: phase count does not match the plan");
    grid.validate(plan);
    const auto bins = carrier_bins(plan, grid);
    const detail::ToneTable table(grid.num_samples);
    std::vector<double> x(grid.num_samples);
    synthesize_into(x, plan, phases.phases, bins, table);
    return x;
}

std::vector<double> apply_nonlinearity(std::span<const double> x, const NonlinearityModel &model)
{
    std::vector<double> y(x.begin(), x.end());
    cube_in_place(y, model);
    return y;
}

std::complex<double> channel_bin_phasor(std::span<const double> y, const SimulationGrid &grid, double f)
{
    if (y.size() != grid.num_samples)
        throw std::invalid_argument("channel_bin_phasor: sequence length does not match the grid");
    const detail::ToneTable table(grid.num_samples);
    return bin_phasor(y, table, bin_of(f, grid));
}

std::vector<double> trial_residual_powers(const ChannelPlan &plan, const NonlinearityModel &model,
                                          std::span<const double> phases, const SimulationGrid &grid)
{
    if (phases.size() != static_cast<std::size_t>(plan.size()))
        throw std::invalid_argument("trial_residual_powers: phase count does not match the plan");
    require_oracle_ready(plan, model, grid);
    const auto bins = carrier_bins(plan, grid);
    const detail::ToneTable table(grid.num_samples);
    const auto phasors = trial_phasors(plan, model, phases, bins, table);
    std::vector<double> out;
    out.reserve(phasors.size());
    for (int k = 1; k <= plan.size(); ++k)
    {
        const auto i = static_cast<std::size_t>(k - 1);
        const auto residual = phasors[i] - std::polar(signal_term_amplitude(plan, model, k), phases[i]);
        out.push_back(0.5 * std::norm(residual));
    }
    return out;
}

std::vector<McEstimate> measure_aci_profile_mc(const ChannelPlan &plan, const NonlinearityModel &model, int trials,
                                               std::uint64_t seed, const SimulationGrid &grid,
                                               SignalRemoval removal, unsigned threads)
{
    const TrialBatch batch = run_trials(plan, model, trials, seed, grid, threads);

    std::vector<double> gains;
    if (removal == SignalRemoval::Analytic)
    {
        for (int k = 1; k <= plan.size(); ++k)
            gains.push_back(signal_term_amplitude(plan, model, k));
    }
    else
    {
        gains = in_phase_means(batch, plan.size());
    }

    std::vector<McEstimate> out;
    std::vector<double> samples(batch.phasors.size());
    for (std::size_t k = 0; k < gains.size(); ++k)
    {
        for (std::size_t t = 0; t < samples.size(); ++t)
        {
            const auto residual = batch.phasors[t][k] - std::polar(gains[k], batch.phases[t][k]);
            samples[t] = 0.5 * std::norm(residual);
        }
        out.push_back(summarize(samples));
    }
    return out;
}

McEstimate measure_aci_mc(const ChannelPlan &plan, const NonlinearityModel &model, int n, int trials,
                          std::uint64_t seed, const SimulationGrid &grid, SignalRemoval removal, unsigned threads)
{
    if (n < 1 || n > plan.size())
        throw std::out_of_range("measure_aci_mc: channel " + std::to_string(n) + " outside the plan");
    return measure_aci_profile_mc(plan, model, trials, seed, grid, removal, threads)[static_cast<std::size_t>(n - 1)];
}

std::vector<double> estimate_signal_amplitudes(const ChannelPlan &plan, const NonlinearityModel &model, int trials,
                                               std::uint64_t seed, const SimulationGrid &grid, unsigned threads)
{
    return in_phase_means(run_trials(plan, model, trials, seed, grid, threads), plan.size());
}

Fig1Data emit_fig1_data(const ChannelPlan &plan, const PhaseRealization &phases, const NonlinearityModel &model,
                        const SimulationGrid &grid)
{
    Fig1Data d;
    d.x_waveform = synthesize(plan, phases, grid);
    d.y3_waveform = apply_nonlinearity(d.x_waveform, model);

    const auto bins = carrier_bins(plan, grid);
    const detail::ToneTable table(grid.num_samples);
    d.intermod_waveform = d.y3_waveform;
    for (int k = 1; k <= plan.size(); ++k)
    {
        const auto i = static_cast<std::size_t>(k - 1);
        detail::add_tone(d.intermod_waveform, table, bins[i], -signal_term_amplitude(plan, model, k),
                         phases.phases[i]);
    }

    d.time.resize(grid.num_samples);
    for (std::size_t m = 0; m < grid.num_samples; ++m)
        d.time[m] = static_cast<double>(m) / grid.sample_rate;

    d.x_spectrum = one_sided_power(d.x_waveform);
    d.y3_spectrum = one_sided_power(d.y3_waveform);
    d.intermod_spectrum = one_sided_power(d.intermod_waveform);
    d.frequency.resize(d.x_spectrum.size());
    for (std::size_t k = 0; k < d.frequency.size(); ++k)
        d.frequency[k] = bin_frequency(k, grid.sample_rate, grid.num_samples);
    return d;
}

} // namespace im3
