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

#include "im3/random.hpp"

#include <numbers>

namespace im3
{

namespace
{
constexpr std::uint64_t phase_tag = 0x7068617365ULL; // "phase"
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t tag)
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(tag), hi(tag)};
    return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64 &engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::vector<double> draw_phases(std::uint64_t seed, std::uint64_t trial, int count)
{
    auto engine = make_stream(seed, trial, phase_tag);
    std::vector<double> out(static_cast<std::size_t>(count > 0 ? count : 0));
    for (auto &p : out)
        p = 2.0 * std::numbers::pi * unit_uniform(engine);
    return out;
}

} // namespace im3
