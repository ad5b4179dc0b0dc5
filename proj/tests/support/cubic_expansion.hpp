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

#ifndef IM3_TESTS_CUBIC_EXPANSION_HPP
#define IM3_TESTS_CUBIC_EXPANSION_HPP

// Test-only oracle: multiplies out (sum_k A_k cos(w_k t + theta_k))^3 term by term over
// all N^3 ordered index triples, turns each cosine product into its four sum/difference
// cosines and groups the results by exact integer phase signature. Nothing here relies
// on the index bookkeeping used by the library.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace im3::testing
{

using Signature = std::vector<int>; // coefficient per carrier, length N

// Coherent peak amplitude per signature, for rho3 = 1. Signatures are normalised so the
// coefficient sum is positive (cos is even); zero-frequency (DC) terms are dropped.
inline std::map<Signature, double> expand_cubic(std::span<const double> amplitudes)
{
    const std::size_t N = amplitudes.size();
    std::map<Signature, double> out;
    const int signs[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
            {
                const double coeff = amplitudes[k] * amplitudes[i] * amplitudes[j] / 4.0;
                if (coeff == 0.0)
                    continue;
                for (const auto &s : signs)
                {
                    Signature sig(N, 0);
                    sig[k] += 1;
                    sig[i] += s[0];
                    sig[j] += s[1];
                    int total = 0;
                    for (int c : sig)
                        total += c;
                    if (total < 0)
                        for (int &c : sig)
                            c = -c;
                    // total is odd for three unit coefficients, so never zero.
                    out[sig] += coeff;
                }
            }
    return out;
}

inline int coefficient_sum(const Signature &s)
{
    int t = 0;
    for (int c : s)
        t += c;
    return t;
}

inline bool is_signal(const Signature &s, std::size_t channel0)
{
    for (std::size_t m = 0; m < s.size(); ++m)
        if (s[m] != (m == channel0 ? 1 : 0))
            return false;
    return true;
}

// Intermodulation terms (coefficient sum +1, not the carrier itself) whose frequency
// sum_m coeff_m f_m equals `target` exactly.
inline std::map<Signature, double> products_at(const std::map<Signature, double> &expansion,
                                               std::span<const double> frequencies, double target)
{
    std::map<Signature, double> out;
    for (const auto &[sig, amp] : expansion)
    {
        if (coefficient_sum(sig) != 1)
            continue;
        double f = 0.0;
        bool carrier = false;
        for (std::size_t m = 0; m < sig.size(); ++m)
        {
            f += sig[m] * frequencies[m];
            if (is_signal(sig, m))
                carrier = true;
        }
        if (!carrier && f == target)
            out[sig] = amp;
    }
    return out;
}

// Incoherent ACI power at target: sum of amp^2/2 over distinct signatures.
inline double aci_power_at(const std::map<Signature, double> &expansion, std::span<const double> frequencies,
                           double target)
{
    double p = 0.0;
    for (const auto &[sig, amp] : products_at(expansion, frequencies, target))
        p += 0.5 * amp * amp;
    return p;
}

} // namespace im3::testing

#endif
