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

#include <catch2/catch_amalgamated.hpp>

#include "im3/channel_plan.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace im3;
using Catch::Approx;

TEST_CASE("build_uniform_plan - three equal carriers")
{
    const std::vector<double> amps{1, 1, 1};
    const ChannelPlan plan = build_uniform_plan(100.0, 1.0, amps);
    REQUIRE(plan.size() == 3);
    CHECK(plan.frequency(1) == 100.0);
    CHECK(plan.frequency(2) == 101.0);
    CHECK(plan.frequency(3) == 102.0);
    for (const auto &ch : plan.channels())
    {
        CHECK(ch.amplitude == 1.0);
        CHECK_FALSE(ch.is_pseudo);
    }
}

TEST_CASE("build_uniform_plan - zero amplitudes become pseudo channels")
{
    const std::vector<double> amps{1, 0, 1, 0, 0, 1, 0, 0, 0, 1};
    const ChannelPlan plan = build_uniform_plan(5.0, 1.0, amps);
    REQUIRE(plan.size() == 10);
    std::vector<int> pseudo;
    for (const auto &ch : plan.channels())
        if (ch.is_pseudo)
            pseudo.push_back(ch.index);
    CHECK(pseudo == std::vector<int>{2, 4, 5, 7, 8, 9});
    CHECK(plan.frequency(10) == 14.0);
    CHECK(plan.real_count() == 4);
}

TEST_CASE("build_uniform_plan - invalid input throws")
{
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(build_uniform_plan(10.0, 0.0, one), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_plan(10.0, -1.0, one), std::invalid_argument);
    const std::vector<double> neg{1.0, -0.5};
    CHECK_THROWS_AS(build_uniform_plan(10.0, 1.0, neg), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_plan(10.0, 1.0, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_plan(10.0, 1.0, std::vector<double>{NAN}), std::invalid_argument);
}

TEST_CASE("ChannelPlan - channel lookup is 1-based and bounded")
{
    const ChannelPlan plan(1.0, 1.0, {1, 2});
    CHECK(plan.amplitude(2) == 2.0);
    CHECK_THROWS_AS(plan.channel(0), std::out_of_range);
    CHECK_THROWS_AS(plan.channel(3), std::out_of_range);
}

TEST_CASE("ChannelPlan - clean IM3 band condition and re-homing")
{
    const ChannelPlan low(5.0, 1.0, std::vector<double>(10, 1.0));
    CHECK_FALSE(low.has_clean_im3_band());
    const ChannelPlan moved = low.rehomed_for_simulation();
    CHECK(moved.has_clean_im3_band());
    CHECK(moved.f0() == 16.0);
    CHECK(moved.amplitudes() == low.amplitudes());

    const ChannelPlan wide(1.0, 1.0, std::vector<double>(40, 1.0));
    CHECK(wide.rehomed_for_simulation().f0() == 40.0);
}

TEST_CASE("gridify - four unequally spaced carriers become a 10-slot grid")
{
    const std::vector<double> f{5, 7, 10, 14};
    const std::vector<double> a{1, 1, 1, 1};
    const ChannelPlan plan = gridify(f, a, 1e-9);
    REQUIRE(plan.size() == 10);
    CHECK(plan.delta_f() == 1.0);
    CHECK(plan.f0() == 5.0);
    std::vector<int> real;
    for (const auto &ch : plan.channels())
        if (!ch.is_pseudo)
            real.push_back(ch.index);
    CHECK(real == std::vector<int>{1, 3, 6, 10});
    CHECK(plan.size() - plan.real_count() == 6);
}

TEST_CASE("gridify - single carrier uses unit spacing")
{
    const ChannelPlan plan = gridify(std::vector<double>{3.0}, std::vector<double>{2.0}, 1e-9);
    REQUIRE(plan.size() == 1);
    CHECK(plan.delta_f() == 1.0);
    CHECK(plan.f0() == 3.0);
    CHECK(plan.amplitude(1) == 2.0);
}

// Independent search: the largest spacing span/j, j = 1..2000, that puts every
// carrier on the grid.
static double brute_force_spacing(const std::vector<double> &f, double tol)
{
    const double span = f.back() - f.front();
    for (int j = 1; j <= 2000; ++j)
    {
        const double d = span / j;
        bool ok = true;
        for (double v : f)
        {
            const double x = (v - f.front()) / d;
            if (std::abs(x - std::round(x)) > tol)
                ok = false;
        }
        if (ok)
            return d;
    }
    return 0.0;
}

TEST_CASE("gridify - half-unit spacing is the coarsest grid for 1, 1.5, 3")
{
    const std::vector<double> f{1.0, 1.5, 3.0};
    const std::vector<double> a{1, 1, 1};
    const double oracle = brute_force_spacing(f, 1e-9);
    REQUIRE(oracle == Approx(0.5));

    const ChannelPlan plan = gridify(f, a, 1e-9);
    CHECK(plan.delta_f() == Approx(oracle).epsilon(1e-15));
    REQUIRE(plan.size() == 5);
    CHECK_FALSE(plan.channel(1).is_pseudo);
    CHECK_FALSE(plan.channel(2).is_pseudo);
    CHECK(plan.channel(3).is_pseudo);
    CHECK(plan.channel(4).is_pseudo);
    CHECK_FALSE(plan.channel(5).is_pseudo);
}

TEST_CASE("gridify - agrees with the brute-force spacing search on random decimal plans")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> step(1, 12);
    std::uniform_int_distribution<int> base(100, 999);
    for (int trial = 0; trial < 50; ++trial)
    {
        // Offsets on a 0.05 grid with random gaps.
        std::vector<double> f{base(rng) * 0.05};
        const int count = 2 + trial % 5;
        int units = 0;
        for (int i = 1; i < count; ++i)
        {
            units += step(rng);
            f.push_back(f.front() + units * 0.05);
        }
        const std::vector<double> a(f.size(), 1.0);
        const ChannelPlan plan = gridify(f, a, 1e-6);
        CHECK(plan.delta_f() == Approx(brute_force_spacing(f, 1e-6)).epsilon(1e-9));
    }
}

TEST_CASE("gridify - real carriers read back within tolerance")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> amp(0.1, 3.0);
    std::uniform_int_distribution<int> gap(1, 9);
    for (int trial = 0; trial < 40; ++trial)
    {
        const double df = 0.125 * (1 + trial % 7);
        std::vector<double> f{1000.0 + trial};
        std::vector<double> a{amp(rng)};
        for (int i = 0; i < 1 + trial % 6; ++i)
        {
            f.push_back(f.back() + gap(rng) * df);
            a.push_back(amp(rng));
        }
        const double tol = 1e-9;
        const ChannelPlan plan = gridify(f, a, tol);
        CHECK(plan.real_count() == static_cast<int>(f.size()));
        std::size_t next = 0;
        for (const auto &ch : plan.channels())
        {
            if (ch.is_pseudo)
                continue;
            REQUIRE(next < f.size());
            CHECK(std::abs(ch.center_frequency - f[next]) <= tol * plan.delta_f());
            CHECK(ch.amplitude == a[next]);
            ++next;
        }
        CHECK(next == f.size());
        CHECK(total_power(plan) == Approx(
                                       [&] {
                                           double s = 0;
                                           for (double v : a)
                                               s += v * v;
                                           return s;
                                       }())
                                       .epsilon(1e-15));
    }
}

TEST_CASE("gridify - already uniform plans are returned unchanged")
{
    const double f0s[] = {5.0, 100.25, 2.4e9};
    const double dfs[] = {1.0, 0.05, 2.5e6};
    for (int c = 0; c < 3; ++c)
    {
        for (int n = 2; n <= 12; ++n)
        {
            std::vector<double> f, a;
            for (int k = 0; k < n; ++k)
            {
                f.push_back(f0s[c] + k * dfs[c]);
                a.push_back(1.0 + 0.1 * k);
            }
            const ChannelPlan plan = gridify(f, a, 1e-9);
            CHECK(plan.size() == n);
            CHECK(plan.real_count() == n);
            CHECK(plan.delta_f() == Approx(dfs[c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("gridify - incommensurate plans name the worst carrier")
{
    const std::vector<double> f{0.0, 1.0, 2.0000001};
    const std::vector<double> a{1, 1, 1};
    try
    {
        (void)gridify(f, a, 1e-9);
        FAIL("expected IncommensuratePlanError");
    }
    catch (const IncommensuratePlanError &e)
    {
        CHECK(e.worst_frequency() == 2.0000001);
        CHECK(std::string(e.what()).find("incommensurate plan") != std::string::npos);
    }
}

TEST_CASE("gridify - grids beyond the channel cap are rejected")
{
    const std::vector<double> f{0.0, 1.0, 20000.0 + 1e-3};
    const std::vector<double> a{1, 1, 1};
    CHECK_THROWS_AS(gridify(f, a, 1e-6), IncommensuratePlanError);
}

TEST_CASE("gridify - malformed input throws invalid_argument")
{
    const std::vector<double> a2{1, 1};
    CHECK_THROWS_AS(gridify(std::vector<double>{2.0, 1.0}, a2), std::invalid_argument);
    CHECK_THROWS_AS(gridify(std::vector<double>{1.0, 1.0}, a2), std::invalid_argument);
    CHECK_THROWS_AS(gridify(std::vector<double>{1.0}, a2), std::invalid_argument);
    CHECK_THROWS_AS(gridify(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(gridify(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gridify(std::vector<double>{1.0, 2.0}, a2, 0.0), std::invalid_argument);
}

TEST_CASE("total_power - sums squared amplitudes")
{
    CHECK(total_power(ChannelPlan(1.0, 1.0, std::vector<double>(9, 1.0))) == 9.0);
    const ChannelPlan grid = gridify(std::vector<double>{5, 7, 10, 14}, std::vector<double>{1, 2, 3, 4});
    CHECK(total_power(grid) == 30.0);
    CHECK(total_power(ChannelPlan(1.0, 1.0, {0, 0, 0})) == 0.0);
}

TEST_CASE("total_power - invariant under pseudo-channel insertion")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> amp(0.0, 2.0);
    for (int t = 0; t < 20; ++t)
    {
        std::vector<double> a(static_cast<std::size_t>(3 + t % 5));
        for (auto &v : a)
            v = amp(rng);
        std::vector<double> padded;
        for (double v : a)
        {
            padded.push_back(v);
            padded.push_back(0.0);
        }
        padded.insert(padded.begin(), 0.0);
        CHECK(total_power(ChannelPlan(10.0, 0.5, padded)) == Approx(total_power(ChannelPlan(10.0, 1.0, a))));
    }
}

TEST_CASE("NonlinearityModel - validation")
{
    CHECK_NOTHROW(NonlinearityModel{1.0, -0.3}.validate());
    CHECK_THROWS_AS((NonlinearityModel{1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NonlinearityModel{INFINITY, 1.0}.validate()), std::invalid_argument);
}
