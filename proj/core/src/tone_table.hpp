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

#ifndef IM3_TONE_TABLE_HPP
#define IM3_TONE_TABLE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace im3::detail
{

// cos/sin of 2*pi*r/L for r = 0..L-1. Every on-bin tone of a length-L block is a
// strided walk through this table, so synthesis and DFT bins share the same values.
class ToneTable
{
  public:
    explicit ToneTable(std::size_t length) : length_(length), cos_(length), sin_(length)
    {
        for (std::size_t r = 0; r < length; ++r)
        {
            const double w = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(length);
            cos_[r] = std::cos(w);
            sin_[r] = std::sin(w);
        }
    }

    std::size_t length() const { return length_; }
    double cos(std::size_t r) const { return cos_[r]; }
    double sin(std::size_t r) const { return sin_[r]; }

  private:
    std::size_t length_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

// Adds amplitude * cos(2 pi bin m / L + phase) to out[m].
inline void add_tone(std::vector<double> &out, const ToneTable &table, std::size_t bin, double amplitude,
                     double phase)
{
    const double c = amplitude * std::cos(phase);
    const double s = amplitude * std::sin(phase);
    const std::size_t L = table.length();
    std::size_t r = 0;
    for (std::size_t m = 0; m < out.size(); ++m)
    {
        out[m] += c * table.cos(r) - s * table.sin(r);
        r += bin;
        if (r >= L)
            r -= L;
    }
}

} // namespace im3::detail

#endif
