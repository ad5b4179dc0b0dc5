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

#ifndef IM3_CHANNEL_PLAN_HPP
#define IM3_CHANNEL_PLAN_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace im3
{

// One carrier slot on the uniform grid. Indices are 1-based.
struct Channel
{
    int index = 1;
    double center_frequency = 0.0; // Hz
    double amplitude = 0.0;        // peak amplitude of the cosine, volts
    bool is_pseudo = false;        // zero-power placeholder
};

// Memoryless device y = rho1*x + rho3*x^3.
struct NonlinearityModel
{
    double rho1 = 0.0; // linear gain
    double rho3 = 1.0; // cubic coefficient, 1/V^2

    // Throws std::invalid_argument unless both coefficients are finite and rho3 != 0.
    void validate() const;
};

// N channels at f0 + (k-1)*delta_f, k = 1..N. Immutable after construction.
class ChannelPlan
{
  public:
    // Throws std::invalid_argument for delta_f <= 0, non-finite values, an empty
    // amplitude list or a negative amplitude. Zero amplitudes become pseudo channels.
    ChannelPlan(double f0, double delta_f, std::vector<double> amplitudes);

    int size() const { return static_cast<int>(channels_.size()); }
    double f0() const { return f0_; }
    double delta_f() const { return delta_f_; }

    const std::vector<Channel> &channels() const { return channels_; }
    const Channel &channel(int k) const;   // 1-based, throws std::out_of_range
    double amplitude(int k) const { return channel(k).amplitude; }
    double frequency(int k) const { return channel(k).center_frequency; }
    std::vector<double> amplitudes() const;

    int real_count() const;

    // Every retained IM3 product of the plan sits at a positive frequency below the
    // lowest out-of-band product when f0 > (N-1)*delta_f. Only the waveform oracles
    // need this; the analytic engine works on indices.
    bool has_clean_im3_band() const;

    // Same amplitudes, re-homed to f0 = max(16, N)*delta_f for waveform simulation.
    ChannelPlan rehomed_for_simulation() const;

  private:
    double f0_;
    double delta_f_;
    std::vector<Channel> channels_;
};

// Raised by gridify when no grid spacing fits every frequency within tolerance.
class IncommensuratePlanError : public std::runtime_error
{
  public:
    IncommensuratePlanError(const std::string &what, double worst_frequency)
        : std::runtime_error(what), worst_frequency_(worst_frequency)
    {
    }
    double worst_frequency() const { return worst_frequency_; }

  private:
    double worst_frequency_;
};

inline constexpr int max_grid_channels = 10000;

ChannelPlan build_uniform_plan(double f0, double delta_f, std::span<const double> amplitudes);

// Places arbitrary, strictly increasing carrier frequencies on the coarsest uniform grid
// that reproduces each of them within rel_tolerance * delta_f, filling the empty slots
// with pseudo channels. A single carrier gets delta_f = 1.
//
// Frequencies are handled as integers over a power-of-ten denominator; the candidate
// spacings are the divisors of the gcd of the scaled offsets from the lowest carrier,
// tried from the largest, at increasing decimal resolution. Grids larger than
// max_grid_channels are rejected.
//
// Throws std::invalid_argument on malformed input and IncommensuratePlanError when no
// grid is found.
ChannelPlan gridify(std::span<const double> frequencies, std::span<const double> amplitudes,
                    double rel_tolerance = 1e-9);

// Sum of squared peak amplitudes (not the A^2/2 cosine powers).
double total_power(const ChannelPlan &plan);

} // namespace im3

#endif
