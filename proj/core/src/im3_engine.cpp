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

#include "im3/im3_engine.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace im3
{

PhaseSignature PhaseSignature::double_product(int i, int k)
{
    PhaseSignature s;
    s.size = 2;
    s.terms[0] = {i, 2};
    s.terms[1] = {k, -1};
    std::sort(s.terms.begin(), s.terms.begin() + 2);
    return s;
}

PhaseSignature PhaseSignature::triple_product(int a, int b, int c)
{
    PhaseSignature s;
    s.size = 3;
    s.terms = {Term{a, 1}, Term{b, 1}, Term{c, -1}};
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

int PhaseSignature::coefficient_sum() const
{
    int sum = 0;
    for (const auto &t : view())
        sum += t.coeff;
    return sum;
}

int PhaseSignature::landing_offset() const
{
    int sum = 0;
    for (const auto &t : view())
        sum += t.coeff * (t.index - 1);
    return sum;
}

double PhaseSignature::phase(std::span<const double> phases) const
{
    double sum = 0.0;
    for (const auto &t : view())
        sum += t.coeff * phases[static_cast<std::size_t>(t.index - 1)];
    return sum;
}

namespace
{

void check_channel(const ChannelPlan &plan, int n, const char *who)
{
    if (n < 1 || n > plan.size())
        throw std::out_of_range(std::string(who) + ": channel " + std::to_string(n) + " outside [1, " +
                                std::to_string(plan.size()) + "]");
}

} // namespace

std::vector<Im3Product> enumerate_products(const ChannelPlan &plan, int n, const NonlinearityModel &model)
{
    check_channel(plan, n, "enumerate_products");
    const int N = plan.size();
    const double gain = std::abs(model.rho3);
    const auto &ch = plan.channels();
    auto amp = [&](int m) { return ch[static_cast<std::size_t>(m - 1)].amplitude; };

    std::vector<int> real;
    for (const auto &c : ch)
        if (!c.is_pseudo)
            real.push_back(c.index);

    std::vector<Im3Product> out;

    // 2 f_i - f_k lands in n when k = 2i - n; i != k is the same as i != n.
    for (int i : real)
    {
        const int k = 2 * i - n;
        if (i == n || k < 1 || k > N || amp(k) == 0.0)
            continue;
        Im3Product p;
        p.kind = ProductClass::Double;
        p.signature = PhaseSignature::double_product(i, k);
        p.amplitude = 0.75 * gain * amp(k) * amp(i) * amp(i);
        p.sources = {i, k, 0};
        out.push_back(p);
    }

    // f_a + f_b - f_c with c = a + b - n. Six cosines of the cubic expansion share this
    // frequency and phase: two orderings of (a, b) in each of the three sign patterns.
    for (std::size_t ia = 0; ia < real.size(); ++ia)
    {
        const int a = real[ia];
        for (std::size_t ib = ia + 1; ib < real.size(); ++ib)
        {
            const int b = real[ib];
            const int c = a + b - n;
            if (c < 1 || c > N || c == a || c == b || amp(c) == 0.0)
                continue;
            Im3Product p;
            p.kind = ProductClass::Triple;
            p.signature = PhaseSignature::triple_product(a, b, c);
            p.amplitude = 1.5 * gain * amp(a) * amp(b) * amp(c);
            p.sources = {a, b, c};
            out.push_back(p);
        }
    }
    return out;
}

double aci_power(const ChannelPlan &plan, const NonlinearityModel &model, int n)
{
    double sum = 0.0;
    for (const auto &p : enumerate_products(plan, n, model))
        sum += 0.5 * p.amplitude * p.amplitude;
    return sum;
}

double aci_power_coherent(const ChannelPlan &plan, const NonlinearityModel &model, int n,
                          std::span<const double> phases)
{
    if (phases.size() != static_cast<std::size_t>(plan.size()))
        throw std::invalid_argument("aci_power_coherent: expected " + std::to_string(plan.size()) +
                                    " phases, got " + std::to_string(phases.size()));
    std::complex<double> sum{0.0, 0.0};
    for (const auto &p : enumerate_products(plan, n, model))
        sum += std::polar(p.amplitude, p.signature.phase(phases));
    return 0.5 * std::norm(sum);
}

double signal_term_amplitude(const ChannelPlan &plan, const NonlinearityModel &model, int k)
{
    check_channel(plan, k, "signal_term_amplitude");
    const double a = plan.amplitude(k);
    const double pt = total_power(plan);
    return model.rho1 * a + model.rho3 * (0.75 * a * a * a + 1.5 * a * (pt - a * a));
}

AciProfile aci_profile(const ChannelPlan &plan, const NonlinearityModel &model, Normalization normalization,
                       unsigned threads)
{
    AciProfile profile;
    profile.n_channels = plan.size();
    profile.normalization = normalization;
    profile.powers.assign(static_cast<std::size_t>(plan.size()), 0.0);

    const double scale = normalization == Normalization::PerNSquared
                             ? 1.0 / (static_cast<double>(plan.size()) * plan.size())
                             : 1.0;
    detail::parallel_for(profile.powers.size(), threads, [&](std::size_t i) {
        profile.powers[i] = aci_power(plan, model, static_cast<int>(i) + 1) * scale;
    });
    return profile;
}

} // namespace im3
