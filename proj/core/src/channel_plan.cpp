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

#include "im3/channel_plan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string_view>

namespace im3
{

void NonlinearityModel::validate() const
{
    if (!std::isfinite(rho1) || !std::isfinite(rho3))
        throw std::invalid_argument("NonlinearityModel: coefficients must be finite");
    if (rho3 == 0.0)
        throw std::invalid_argument("NonlinearityModel: rho3 must be nonzero for IM3 analysis");
}

ChannelPlan::ChannelPlan(double f0, double delta_f, std::vector<double> amplitudes)
    : f0_(f0), delta_f_(delta_f)
{
    if (!std::isfinite(f0))
        throw std::invalid_argument("ChannelPlan: f0 must be finite");
    if (!std::isfinite(delta_f) || delta_f <= 0.0)
        throw std::invalid_argument("ChannelPlan: delta_f must be positive and finite");
    if (amplitudes.empty())
        throw std::invalid_argument("ChannelPlan: at least one channel is required");
    if (amplitudes.size() > static_cast<std::size_t>(max_grid_channels))
        throw std::invalid_argument("ChannelPlan: too many channels");

    channels_.reserve(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
    {
        const double a = amplitudes[i];
        if (!std::isfinite(a) || a < 0.0)
        {
            std::ostringstream msg;
            msg << "ChannelPlan: amplitude of channel " << (i + 1) << " must be finite and >= 0";
            throw std::invalid_argument(msg.str());
        }
        Channel ch;
        ch.index = static_cast<int>(i) + 1;
        ch.center_frequency = f0 + static_cast<double>(i) * delta_f;
        ch.amplitude = a;
        ch.is_pseudo = (a == 0.0);
        channels_.push_back(ch);
    }
}

const Channel &ChannelPlan::channel(int k) const
{
    if (k < 1 || k > size())
        throw std::out_of_range("ChannelPlan: channel index " + std::to_string(k) + " outside [1, " +
                                std::to_string(size()) + "]");
    return channels_[static_cast<std::size_t>(k - 1)];
}

std::vector<double> ChannelPlan::amplitudes() const
{
    std::vector<double> out;
    out.reserve(channels_.size());
    for (const auto &ch : channels_)
        out.push_back(ch.amplitude);
    return out;
}

int ChannelPlan::real_count() const
{
    return static_cast<int>(std::count_if(channels_.begin(), channels_.end(),
                                          [](const Channel &c) { return !c.is_pseudo; }));
}

bool ChannelPlan::has_clean_im3_band() const
{
    return f0_ > static_cast<double>(size() - 1) * delta_f_;
}

ChannelPlan ChannelPlan::rehomed_for_simulation() const
{
    const double f0 = static_cast<double>(std::max(16, size())) * delta_f_;
    return ChannelPlan(f0, delta_f_, amplitudes());
}

ChannelPlan build_uniform_plan(double f0, double delta_f, std::span<const double> amplitudes)
{
    return ChannelPlan(f0, delta_f, std::vector<double>(amplitudes.begin(), amplitudes.end()));
}

namespace
{

// Largest |value| * 10^p kept exactly representable in a double.
constexpr double exact_integer_limit = 9007199254740992.0; // 2^53

struct GridFit
{
    bool ok = false;
    double worst_ratio = std::numeric_limits<double>::infinity(); // residual / delta
    double worst_frequency = 0.0;
};

GridFit check_grid(std::span<const double> freqs, double delta, double rel_tolerance)
{
    GridFit fit;
    fit.worst_ratio = 0.0;
    fit.worst_frequency = freqs.front();
    const double origin = freqs.front();
    for (double f : freqs)
    {
        const double slot = std::round((f - origin) / delta);
        const double ratio = std::abs(f - (origin + slot * delta)) / delta;
        if (ratio > fit.worst_ratio)
        {
            fit.worst_ratio = ratio;
            fit.worst_frequency = f;
        }
    }
    fit.ok = fit.worst_ratio <= rel_tolerance;
    return fit;
}

} // namespace

ChannelPlan gridify(std::span<const double> frequencies, std::span<const double> amplitudes,
                    double rel_tolerance)
{
    if (frequencies.empty())
        throw std::invalid_argument("gridify: at least one frequency is required");
    if (frequencies.size() != amplitudes.size())
        throw std::invalid_argument("gridify: frequencies and amplitudes differ in length");
    if (!std::isfinite(rel_tolerance) || rel_tolerance <= 0.0 || rel_tolerance >= 0.5)
        throw std::invalid_argument("gridify: rel_tolerance must lie in (0, 0.5)");
    for (std::size_t i = 0; i < frequencies.size(); ++i)
    {
        if (!std::isfinite(frequencies[i]))
            throw std::invalid_argument("gridify: non-finite frequency");
        if (i > 0 && !(frequencies[i] > frequencies[i - 1]))
            throw std::invalid_argument("gridify: frequencies must be strictly increasing");
        if (!std::isfinite(amplitudes[i]) || amplitudes[i] < 0.0)
            throw std::invalid_argument("gridify: amplitudes must be finite and >= 0");
    }

    if (frequencies.size() == 1)
        return ChannelPlan(frequencies.front(), 1.0, {amplitudes.front()});

    double max_abs = 0.0;
    for (double f : frequencies)
        max_abs = std::max(max_abs, std::abs(f));

    GridFit best;      // among grids within the channel cap
    GridFit best_fine; // grids too fine to build, used only if nothing else was tried
    double scale = 1.0;
    for (int p = 0; max_abs * scale < exact_integer_limit; ++p, scale *= 10.0)
    {
        // Exact integer numerators over the common denominator 10^p.
        std::vector<std::int64_t> offsets;
        offsets.reserve(frequencies.size() - 1);
        const auto base = static_cast<std::int64_t>(std::llround(frequencies.front() * scale));
        std::int64_t g = 0;
        for (std::size_t i = 1; i < frequencies.size(); ++i)
        {
            const auto num = static_cast<std::int64_t>(std::llround(frequencies[i] * scale));
            offsets.push_back(num - base);
            g = std::gcd(g, num - base);
        }
        if (g == 0)
            continue; // frequencies collapse at this resolution

        const std::int64_t span_units = offsets.back() / g;
        const std::int64_t max_divisor = (max_grid_channels - 1) / std::max<std::int64_t>(span_units, 1);
        if (max_divisor == 0)
        {
            // Grid too fine; still remember how well it fits for the error report.
            GridFit fit = check_grid(frequencies, static_cast<double>(g) / scale, rel_tolerance);
            if (fit.worst_ratio < best_fine.worst_ratio)
                best_fine = fit;
            continue;
        }
        for (std::int64_t q = 1; q <= max_divisor; ++q)
        {
            if (g % q != 0)
                continue;
            const double delta = static_cast<double>(g / q) / scale;
            GridFit fit = check_grid(frequencies, delta, rel_tolerance);
            if (fit.ok)
            {
                const auto n = static_cast<std::size_t>(span_units * q + 1);
                std::vector<double> amps(n, 0.0);
                amps.front() = amplitudes.front();
                for (std::size_t i = 1; i < frequencies.size(); ++i)
                    amps[static_cast<std::size_t>(offsets[i - 1] / (g / q))] = amplitudes[i];
                return ChannelPlan(frequencies.front(), delta, std::move(amps));
            }
            if (fit.worst_ratio < best.worst_ratio)
                best = fit;
        }
    }

    if (!std::isfinite(best.worst_ratio))
        best = best_fine;
    char worst[32];
    const auto end = std::to_chars(worst, worst + sizeof worst, best.worst_frequency).ptr;
    std::ostringstream msg;
    msg << "incommensurate plan: no grid of at most " << max_grid_channels
        << " channels places every carrier within tolerance; worst-fitting frequency "
        << std::string_view(worst, static_cast<std::size_t>(end - worst));
    throw IncommensuratePlanError(msg.str(), best.worst_frequency);
}

double total_power(const ChannelPlan &plan)
{
    double sum = 0.0;
    for (const auto &ch : plan.channels())
        sum += ch.amplitude * ch.amplitude;
    return sum;
}

} // namespace im3
