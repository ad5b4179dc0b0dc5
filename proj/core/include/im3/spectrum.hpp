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

#ifndef IM3_SPECTRUM_HPP
#define IM3_SPECTRUM_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace im3
{

// One-sided power per DFT bin, k = 0..L/2, in the tone convention: an on-bin cosine of
// peak amplitude C shows up as C^2/2 in its bin. The bins sum to the mean square of x.
std::vector<double> one_sided_power(std::span<const double> x);

// Mean of one_sided_power over `segments` equal, non-overlapping, unwindowed blocks.
// Throws std::invalid_argument unless segments >= 1 divides x.size().
std::vector<double> averaged_periodogram(std::span<const double> x, std::size_t segments);

// Centre frequency of bin k for a block of `length` samples.
inline double bin_frequency(std::size_t k, double sample_rate, std::size_t length)
{
    return static_cast<double>(k) * sample_rate / static_cast<double>(length);
}

} // namespace im3

#endif
