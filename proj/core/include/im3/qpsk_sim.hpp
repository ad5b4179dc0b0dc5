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

#ifndef IM3_QPSK_SIM_HPP
#define IM3_QPSK_SIM_HPP

#include "im3/channel_plan.hpp"
#include "im3/tone_oracle.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace im3
{

enum class PulseShape
{
    Rectangular
};

// QPSK on every real carrier of a plan. All channels share one symbol clock.
struct QpskConfig
{
    double symbol_rate = 0.0; // Hz, at most delta_f/2
    int samples_per_symbol = 0;
    std::size_t num_symbols = 4096;
    PulseShape pulse = PulseShape::Rectangular;
    std::uint64_t seed = 1;
    // Every symbol is the same constellation point: the carriers degenerate into tones
    // with phase pi/4.
    bool unmodulated = false;
    // Bartlett averaging (non-overlapping, unwindowed blocks) for the periodogram.
    std::size_t welch_segments = 16;

    // symbol_rate = delta_f/2 and a sample rate of 24 f_max rounded up to a power-of-two
    // multiple of delta_f.
    static QpskConfig defaults_for(const ChannelPlan &plan);

    // sample_rate = symbol_rate * samples_per_symbol, num_samples = num_symbols * samples_per_symbol.
    SimulationGrid grid() const;

    // Throws std::invalid_argument when the configuration cannot be simulated for plan.
    void validate(const ChannelPlan &plan) const;
};

// Transmitted symbols of one channel, (I + jQ) with I, Q in {+-1/sqrt(2)}.
struct QpskBaseband
{
    std::vector<std::complex<double>> symbols;
};

// One stream per channel, drawn from (seed, channel index) only.
std::vector<QpskBaseband> draw_basebands(const ChannelPlan &plan, const QpskConfig &cfg);

// x[m] = sum_k A_k [I_k(m) cos(2 pi f_k m/fs) - Q_k(m) sin(2 pi f_k m/fs)].
std::vector<double> synthesize_qpsk(const ChannelPlan &plan, std::span<const QpskBaseband> basebands,
                                    const QpskConfig &cfg, const SimulationGrid &grid, unsigned threads = 1);
std::vector<double> synthesize_qpsk(const ChannelPlan &plan, const QpskConfig &cfg, const SimulationGrid &grid,
                                    unsigned threads = 1);

struct ResidualResult
{
    std::vector<double> residual;
    std::vector<double> coefficients; // one per channel, 0 for pseudo channels
};

// y minus the least-squares combination of the real channels' transmitted passband
// waveforms. Throws std::runtime_error when the waveforms are linearly dependent.
ResidualResult intermod_residual(std::span<const double> y, const ChannelPlan &plan,
                                 std::span<const QpskBaseband> basebands, const QpskConfig &cfg,
                                 const SimulationGrid &grid, unsigned threads = 1);

// y minus g_k s_k with g_k = signal_term_amplitude(k)/A_k. For constant-envelope carriers
// (QPSK or tones) the compression terms of the cubic are exactly g_k s_k, sample by sample.
ResidualResult intermod_residual_analytic(std::span<const double> y, const ChannelPlan &plan,
                                          const NonlinearityModel &model, std::span<const QpskBaseband> basebands,
                                          const QpskConfig &cfg, const SimulationGrid &grid, unsigned threads = 1);

enum class SignalProjection
{
    AnalyticGain,
    LeastSquares
};

struct BandPowerReport
{
    std::vector<double> per_channel_power;            // volts^2 in [f_n - df/2, f_n + df/2)
    std::vector<std::pair<double, double>> band_edges; // Hz
    std::vector<double> analytic_power;               // aci_power for the same plan
    // per_channel_power scaled so the centre channel (mean of the two middle channels for
    // even N) matches the analytic value. Empty when either centre value is zero.
    std::vector<double> normalized_to_center;
};

BandPowerReport measure_qpsk_aci(const ChannelPlan &plan, const NonlinearityModel &model, const QpskConfig &cfg,
                                 const SimulationGrid &grid,
                                 SignalProjection projection = SignalProjection::AnalyticGain, unsigned threads = 1);

// Averaged one-sided periodograms (linear bin power) of input, output and intermodulation.
struct QpskSpectra
{
    std::vector<double> frequency;
    std::vector<double> x_spectrum;
    std::vector<double> y3_spectrum;
    std::vector<double> intermod_spectrum;
};

QpskSpectra qpsk_spectra(const ChannelPlan &plan, const NonlinearityModel &model, const QpskConfig &cfg,
                         const SimulationGrid &grid, unsigned threads = 1);

// Pearson correlation of two equally long sequences.
double correlation(std::span<const double> a, std::span<const double> b);

} // namespace im3

#endif
