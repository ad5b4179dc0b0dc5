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

#ifndef IM3_TONE_ORACLE_HPP
#define IM3_TONE_ORACLE_HPP

#include "im3/channel_plan.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace im3
{

struct PhaseRealization
{
    std::vector<double> phases; // radians, one per channel
    std::uint64_t seed = 0;

    // Phases for Monte-Carlo trial `trial`; depends only on (seed, trial).
    static PhaseRealization draw(std::uint64_t seed, std::uint64_t trial, int channels);
};

inline constexpr std::size_t max_simulation_samples = std::size_t{1} << 24;

// Sampling contract for leakage-free measurement: every carrier and every IM3 product
// falls on a DFT bin, and the cubic's content up to 3 f_max does not alias.
struct SimulationGrid
{
    double sample_rate = 0.0; // Hz
    std::size_t num_samples = 0;

    double duration() const { return static_cast<double>(num_samples) / sample_rate; }

    // duration = 1/delta_f, sample_rate = 24 f_max rounded up to a power-of-two multiple
    // of delta_f. Requires f0/delta_f to be an integer.
    static SimulationGrid for_plan(const ChannelPlan &plan);

    // Throws std::invalid_argument when the grid aliases, leaves a carrier off-bin or
    // exceeds max_simulation_samples.
    void validate(const ChannelPlan &plan) const;
};

// x[m] = sum_k A_k cos(2 pi f_k m / fs + theta_k).
std::vector<double> synthesize(const ChannelPlan &plan, const PhaseRealization &phases,
                               const SimulationGrid &grid);

// y[m] = rho1 x[m] + rho3 x[m]^3.
std::vector<double> apply_nonlinearity(std::span<const double> x, const NonlinearityModel &model);

// Complex amplitude C e^{j phi} of the component C cos(2 pi f t + phi) of y. f must sit
// on a bin strictly between DC and Nyquist; throws std::invalid_argument otherwise.
std::complex<double> channel_bin_phasor(std::span<const double> y, const SimulationGrid &grid, double f);

// How the coherent in-channel signal is taken out of the measured phasor.
enum class SignalRemoval
{
    Analytic, // subtract signal_term_amplitude(k) e^{j theta_k}
    Estimated // subtract the in-phase amplitude averaged over all trials (no analytic input)
};

struct McEstimate
{
    double mean = 0.0;           // volts^2
    double standard_error = 0.0; // volts^2
};

// Residual (intermodulation) power in every channel for one phase realization, with the
// analytic signal term removed. The plan must satisfy has_clean_im3_band().
std::vector<double> trial_residual_powers(const ChannelPlan &plan, const NonlinearityModel &model,
                                          std::span<const double> phases, const SimulationGrid &grid);

// Monte-Carlo ACI power per channel over `trials` independent uniform phase draws.
// Trials run in parallel; per-trial results are reduced in trial order, so the output
// does not depend on `threads` (0 = hardware concurrency).
std::vector<McEstimate> measure_aci_profile_mc(const ChannelPlan &plan, const NonlinearityModel &model,
                                               int trials, std::uint64_t seed, const SimulationGrid &grid,
                                               SignalRemoval removal = SignalRemoval::Analytic,
                                               unsigned threads = 1);

McEstimate measure_aci_mc(const ChannelPlan &plan, const NonlinearityModel &model, int n, int trials,
                          std::uint64_t seed, const SimulationGrid &grid,
                          SignalRemoval removal = SignalRemoval::Analytic, unsigned threads = 1);

// Trial-averaged in-phase amplitude of each carrier's output phasor; converges to
// signal_term_amplitude without using it.
std::vector<double> estimate_signal_amplitudes(const ChannelPlan &plan, const NonlinearityModel &model,
                                               int trials, std::uint64_t seed, const SimulationGrid &grid,
                                               unsigned threads = 1);

// Waveforms and one-sided spectra (linear bin power, tone convention) of the input, the
// device output and the intermodulation part of the output. The intermodulation part is
// the output minus each carrier's coherent signal term rebuilt in the time domain.
struct Fig1Data
{
    std::vector<double> time;      // seconds
    std::vector<double> frequency; // Hz, bins 0..L/2
    std::vector<double> x_waveform;
    std::vector<double> x_spectrum;
    std::vector<double> y3_waveform;
    std::vector<double> y3_spectrum;
    std::vector<double> intermod_waveform;
    std::vector<double> intermod_spectrum;
};

Fig1Data emit_fig1_data(const ChannelPlan &plan, const PhaseRealization &phases, const NonlinearityModel &model,
                        const SimulationGrid &grid);

} // namespace im3

#endif
