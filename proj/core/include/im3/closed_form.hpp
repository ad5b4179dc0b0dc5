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

#ifndef IM3_CLOSED_FORM_HPP
#define IM3_CLOSED_FORM_HPP

#include <vector>

namespace im3::closed_form
{

// Equal-amplitude, equally spaced plans of N channels. All counts are exact integers;
// every function throws std::out_of_range for n outside [1, N] and
// std::invalid_argument for N < 1.

struct CountPair
{
    long long l_d = 0;
    long long l_t = 0;
};

// Number of 2f_i - f_k products landing in channel n (tabulated by parity of N and n).
long long l_d(int N, int n);

// Direct count of k in [1, N], k != n, k + n even, with (k + n)/2 in [1, N].
long long l_d_direct(int N, int n);

// Ordered (k, i) pairs whose f_k + f_i - f_(k+i-n) lands in channel n:
// 2 + (N^2 + 2nN - 5N - 2n^2 + 2n)/2 - floor((N+n)/2) + floor(n/2), zero for N < 3.
// floor is the usual greatest integer <= y.
long long l_t(int N, int n);

// Double loop over (k, i): k != n, i != k, i != n, n - k < i <= N + n - k.
long long l_t_bruteforce(int N, int n);

CountPair counts(int N, int n);

// rho3^2 * (9/32) * (L_D + 2 L_T) * A^6, in volts^2 (A^2/2 tone convention).
double equal_power_aci(int N, int n, double amplitude, double rho3);

// equal_power_aci(N, n, 1, 1) / N^2 for n = 1..N.
std::vector<double> normalized_profile(int N);

// Statistics of normalized_profile over all channels. Both throw std::invalid_argument
// for N < 3, where no channel receives IM3 power.
double max_normalized(int N);
double ratio_max_min(int N);

} // namespace im3::closed_form

#endif
