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

#ifndef IM3_IM3_ENGINE_HPP
#define IM3_IM3_ENGINE_HPP

#include "im3/channel_plan.hpp"

#include <array>
#include <compare>
#include <span>
#include <vector>

namespace im3
{

// Conventions
// -----------
// * Channel indices are 1-based; landing conditions are evaluated on indices only.
// * Powers follow the single-tone convention into 1 ohm: a cosine of peak amplitude C
//   carries C^2/2 volts^2. dB figures derived from these are unambiguous.
// * ACI power scales with rho3^2; rho1 enters only the in-channel signal term.

enum class ProductClass
{
    Double, // 2 f_i - f_k
    Triple  // f_a + f_b - f_c, a, b, c distinct
};

// Integer phase coefficients over channel indices, e.g. {+2 @ i, -1 @ k}. Terms are
// stored sorted by index; two products are mutually coherent iff signatures are equal.
struct PhaseSignature
{
    struct Term
    {
        int index = 0;
        int coeff = 0;
        auto operator<=>(const Term &) const = default;
    };

    std::array<Term, 3> terms{};
    int size = 0;

    static PhaseSignature double_product(int i, int k);         // +2@i, -1@k
    static PhaseSignature triple_product(int a, int b, int c);  // +1@a, +1@b, -1@c

    int coefficient_sum() const;
    // sum coeff_m * (m - 1); equals n - 1 for a product landing in channel n.
    int landing_offset() const;
    // sum coeff_m * theta_m for a phase vector indexed 0..N-1.
    double phase(std::span<const double> phases) const;

    std::span<const Term> view() const { return {terms.data(), static_cast<std::size_t>(size)}; }
    auto operator<=>(const PhaseSignature &) const = default;
};

// One distinct intermodulation phasor landing in a target channel. amplitude is the
// coherent peak amplitude of every cosine sharing the signature, |rho3| included:
// (3/4)|rho3| A_k A_i^2 for Double and (6/4)|rho3| A_a A_b A_c for Triple.
struct Im3Product
{
    ProductClass kind = ProductClass::Double;
    PhaseSignature signature;
    double amplitude = 0.0;
    // Double: {i, k, 0}. Triple: {a, b, c} with a < b.
    std::array<int, 3> sources{};
};

enum class Normalization
{
    None,
    PerNSquared
};

struct AciProfile
{
    std::vector<double> powers; // volts^2, entry n-1 for channel n
    int n_channels = 0;
    Normalization normalization = Normalization::None;
};

// Every distinct IM3 product landing in channel n, doubles first (ascending i) then
// triples (ascending a, b). Products touching a zero-amplitude channel are omitted.
// Throws std::out_of_range for n outside [1, N].
std::vector<Im3Product> enumerate_products(const ChannelPlan &plan, int n,
                                           const NonlinearityModel &model = {});

// Incoherent sum of product powers: valid for independent, uniform carrier phases.
double aci_power(const ChannelPlan &plan, const NonlinearityModel &model, int n);

// Power of the phasor sum for one phase realization (phases.size() == N, radians).
// Throws std::invalid_argument on length mismatch.
double aci_power_coherent(const ChannelPlan &plan, const NonlinearityModel &model, int n,
                          std::span<const double> phases);

// Peak amplitude of the in-channel component co-phased with carrier k:
// rho1*A_k + rho3*[(3/4)A_k^3 + (3/2)A_k(P_T - A_k^2)].
double signal_term_amplitude(const ChannelPlan &plan, const NonlinearityModel &model, int k);

// aci_power for every channel. Channels are evaluated independently; threads == 0
// picks the hardware concurrency. Output is identical for any thread count.
AciProfile aci_profile(const ChannelPlan &plan, const NonlinearityModel &model,
                       Normalization normalization = Normalization::None, unsigned threads = 1);

} // namespace im3

#endif
