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

#ifndef IM3_RANDOM_HPP
#define IM3_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace im3
{

// Counter-style streams: the output depends only on (seed, stream, tag), never on the
// order in which streams are requested, so parallel runs reproduce serial ones bit for bit.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t tag);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double unit_uniform(std::mt19937_64 &engine);

// Independent uniform phases in [0, 2*pi) for one Monte-Carlo trial.
std::vector<double> draw_phases(std::uint64_t seed, std::uint64_t trial, int count);

} // namespace im3

#endif
