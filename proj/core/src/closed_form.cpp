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

#include "im3/closed_form.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace im3::closed_form
{

namespace
{

void check(int N, int n)
{
    if (N < 1)
        throw std::invalid_argument("closed_form: N must be >= 1, got " + std::to_string(N));
    if (n < 1 || n > N)
        throw std::out_of_range("closed_form: channel " + std::to_string(n) + " outside [1, " +
                                std::to_string(N) + "]");
}

long long floor_div2(long long y)
{
    return y >= 0 ? y / 2 : -((-y + 1) / 2);
}

} // namespace

long long l_d(int N, int n)
{
    check(N, n);
    if (N < 3)
        return 0;
    if (N % 2 == 0)
        return (N - 2) / 2;
    return n % 2 == 0 ? (N - 3) / 2 : (N - 1) / 2;
}

long long l_d_direct(int N, int n)
{
    check(N, n);
    long long count = 0;
    for (int k = 1; k <= N; ++k)
    {
        if (k == n || (k + n) % 2 != 0)
            continue;
        const int i = (k + n) / 2;
        if (i >= 1 && i <= N)
            ++count;
    }
    return count;
}

long long l_t(int N, int n)
{
    check(N, n);
    if (N < 3)
        return 0;
    const long long NN = N;
    const long long nn = n;
    // The quadratic numerator is always even: N^2 - 5N and 2(nN - n^2 + n) are both even.
    const long long quad = NN * NN + 2 * nn * NN - 5 * NN - 2 * nn * nn + 2 * nn;
    const long long value = 2 + quad / 2 - floor_div2(NN + nn) + floor_div2(nn);
    return std::max(0LL, value);
}

long long l_t_bruteforce(int N, int n)
{
    check(N, n);
    long long count = 0;
    for (int k = 1; k <= N; ++k)
    {
        if (k == n)
            continue;
        for (int i = 1; i <= N; ++i)
        {
            if (i == k || i == n)
                continue;
            if (i > n - k && i <= N + n - k)
                ++count;
        }
    }
    return count;
}

CountPair counts(int N, int n)
{
    return {l_d(N, n), l_t(N, n)};
}

double equal_power_aci(int N, int n, double amplitude, double rho3)
{
    if (amplitude < 0.0)
        throw std::invalid_argument("equal_power_aci: amplitude must be >= 0");
    const CountPair c = counts(N, n);
    const double a2 = amplitude * amplitude;
    return rho3 * rho3 * (9.0 / 32.0) * static_cast<double>(c.l_d + 2 * c.l_t) * a2 * a2 * a2;
}

std::vector<double> normalized_profile(int N)
{
    if (N < 1)
        throw std::invalid_argument("normalized_profile: N must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(N));
    const double norm = static_cast<double>(N) * N;
    for (int n = 1; n <= N; ++n)
        out.push_back(equal_power_aci(N, n, 1.0, 1.0) / norm);
    return out;
}

double max_normalized(int N)
{
    if (N < 3)
        throw std::invalid_argument("max_normalized: no third-order ACI exists for N < 3");
    const auto p = normalized_profile(N);
    return *std::max_element(p.begin(), p.end());
}

double ratio_max_min(int N)
{
    if (N < 3)
        throw std::invalid_argument("ratio_max_min: no third-order ACI exists for N < 3");
    const auto p = normalized_profile(N);
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    return *hi / *lo;
}

} // namespace im3::closed_form
