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

#include "im3/im3_engine.hpp"
#include "im3/qpsk_sim.hpp"
#include "im3/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace im3;
using Catch::Approx;

namespace
{

ChannelPlan sim_plan(std::vector<double> amps)
{
    const int N = static_cast<int>(amps.size());
    return ChannelPlan(static_cast<double>(std::max(16, N)), 1.0, std::move(amps));
}

QpskConfig small_config(const ChannelPlan &plan, std::size_t symbols, std::uint64_t seed = 1)
{
    auto cfg = QpskConfig::defaults_for(plan);
    cfg.num_symbols = symbols;
    cfg.seed = seed;
    return cfg;
}

double band_power(const std::vector<double> &spectrum, double seg_bins_per_hz, double lo, double hi)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k)
    {
        const double f = static_cast<double>(k) / seg_bins_per_hz;
        if (f >= lo && f < hi)
            sum += spectrum[k];
    }
    return sum;
}

// Fraction of a rectangular-pulse PSD between lo and hi, with frequency offsets in units
// of the symbol rate, by composite Simpson quadrature of sinc^2.
double sinc2_integral(double lo, double hi)
{
    const int n = 200000;
    const double h = (hi - lo) / n;
    auto f = [](double u) {
        if (u == 0.0)
            return 1.0;
        const double s = std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
        return s * s;
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return sum * h / 3.0;
}

double sinc2_fraction(double half_width)
{
    return sinc2_integral(-half_width, half_width);
}

double energy(std::span<const double> v)
{
    double e = 0.0;
    for (double x : v)
        e += x * x;
    return e;
}

} // namespace

TEST_CASE("QpskConfig - defaults and validation")
{
    const auto plan = sim_plan(std::vector<double>(9, 1.0));
    const auto cfg = QpskConfig::defaults_for(plan);
    CHECK(cfg.symbol_rate == 0.5);
    CHECK(cfg.samples_per_symbol == 2048);
    CHECK(cfg.num_symbols == 4096);
    CHECK(cfg.welch_segments == 16);
    CHECK(cfg.grid().num_samples == 4096u * 2048u);
    CHECK(cfg.grid().sample_rate == 1024.0);
    CHECK_NOTHROW(cfg.validate(plan));

    auto bad = cfg;
    bad.symbol_rate = 0.75;
    bad.samples_per_symbol = 2048 * 2 / 3;
    CHECK_THROWS_AS(bad.validate(plan), std::invalid_argument);
    bad = cfg;
    bad.samples_per_symbol = 4;
    CHECK_THROWS_AS(bad.validate(plan), std::invalid_argument);
    bad = cfg;
    bad.num_symbols = 100;
    CHECK_THROWS_AS(bad.validate(plan), std::invalid_argument);
    bad = cfg;
    bad.num_symbols = 16384;
    CHECK_THROWS_AS(bad.validate(plan), std::invalid_argument);

    const ChannelPlan folded(2.0, 1.0, std::vector<double>(9, 1.0));
    auto fcfg = QpskConfig::defaults_for(folded);
    CHECK_THROWS_AS(fcfg.validate(folded), std::invalid_argument);

    const auto big = sim_plan(std::vector<double>(99, 1.0));
    const auto bcfg = QpskConfig::defaults_for(big);
    CHECK(bcfg.grid().num_samples <= max_simulation_samples);
    CHECK_NOTHROW(bcfg.validate(big));
}

TEST_CASE("synthesize_qpsk - single carrier power")
{
    const auto plan = sim_plan({1.0});
    const auto cfg = small_config(plan, 1024);
    const auto g = cfg.grid();
    const auto x = synthesize_qpsk(plan, cfg, g);
    CHECK(energy(x) / static_cast<double>(x.size()) == Approx(0.5).epsilon(0.01));

    // Band [f - df/2, f + df/2) holds the main lobe of the rectangular-pulse spectrum.
    const auto psd = averaged_periodogram(x, cfg.welch_segments);
    const double bins_per_hz = static_cast<double>(g.num_samples / cfg.welch_segments) / g.sample_rate;
    const double in_band = band_power(psd, bins_per_hz, 15.5, 16.5);
    CHECK(in_band == Approx(0.5 * sinc2_fraction(1.0)).epsilon(0.02));
}

TEST_CASE("synthesize_qpsk - all-pseudo plan is silent")
{
    const auto plan = sim_plan({0.0, 0.0, 0.0});
    const auto cfg = small_config(plan, 64);
    for (double v : synthesize_qpsk(plan, cfg, cfg.grid()))
        REQUIRE(v == 0.0);
}

TEST_CASE("synthesize_qpsk - five carriers give five lobes")
{
    const auto plan = sim_plan(std::vector<double>(5, 1.0));
    const auto cfg = small_config(plan, 1024);
    const auto g = cfg.grid();
    const auto psd = averaged_periodogram(synthesize_qpsk(plan, cfg, g), cfg.welch_segments);
    const double bins_per_hz = static_cast<double>(g.num_samples / cfg.welch_segments) / g.sample_rate;
    for (int k = 1; k <= 5; ++k)
    {
        const double f = plan.frequency(k);
        // Own main lobe plus the sidelobes of the other four carriers (symbol rate df/2).
        double expected = 0.0;
        for (int j = 1; j <= 5; ++j)
            expected += 0.5 * sinc2_integral(2.0 * (k - j) - 1.0, 2.0 * (k - j) + 1.0);
        CHECK(band_power(psd, bins_per_hz, f - 0.5, f + 0.5) == Approx(expected).epsilon(0.03));
        // Peak of each lobe sits at its carrier.
        std::size_t peak = 0;
        for (std::size_t b = 0; b < psd.size(); ++b)
        {
            const double fb = static_cast<double>(b) / bins_per_hz;
            if (fb >= f - 0.5 && fb < f + 0.5 && (peak == 0 || psd[b] > psd[peak]))
                peak = b;
        }
        CHECK(std::abs(static_cast<double>(peak) / bins_per_hz - f) <= 0.1);
    }
    CHECK(band_power(psd, bins_per_hz, 0.0, 10.0) < 0.01);
}

TEST_CASE("intermod_residual - exact multiple of one carrier")
{
    const auto plan = sim_plan({1.0, 0.7, 1.3});
    const auto cfg = small_config(plan, 128);
    const auto g = cfg.grid();
    const auto bb = draw_basebands(plan, cfg);
    const auto only2 = sim_plan({0.0, 0.7, 0.0});
    const auto s2 = synthesize_qpsk(only2, bb, cfg, g);
    std::vector<double> y(s2.size());
    for (std::size_t m = 0; m < y.size(); ++m)
        y[m] = 2.5 * s2[m];
    const auto res = intermod_residual(y, plan, bb, cfg, g);
    CHECK(res.coefficients[1] == Approx(2.5).epsilon(1e-10));
    CHECK(std::abs(res.coefficients[0]) < 1e-10);
    CHECK(std::abs(res.coefficients[2]) < 1e-10);
    double worst = 0.0;
    for (double v : res.residual)
        worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-9);
}

TEST_CASE("intermod_residual - pseudo channels stay out of the basis")
{
    const auto plan = sim_plan({1.0, 0.0, 1.0, 1.0});
    const auto cfg = small_config(plan, 128);
    const auto g = cfg.grid();
    const auto bb = draw_basebands(plan, cfg);
    const auto y = apply_nonlinearity(synthesize_qpsk(plan, bb, cfg, g), {});
    const auto res = intermod_residual(y, plan, bb, cfg, g);
    CHECK(res.coefficients[1] == 0.0);
    CHECK(res.coefficients[0] != 0.0);
    CHECK(energy(res.residual) <= energy(y));

    auto degenerate = bb;
    for (auto &s : degenerate[2].symbols)
        s = {0.0, 0.0};
    CHECK_THROWS_AS(intermod_residual(y, plan, degenerate, cfg, g), std::runtime_error);
    CHECK_THROWS_AS(intermod_residual(std::vector<double>(10, 0.0), plan, bb, cfg, g), std::invalid_argument);
}

TEST_CASE("intermod_residual - least squares matches the analytic gain under modulation")
{
    const auto plan = sim_plan({1.0, 0.8, 1.2, 1.0, 0.9});
    const auto cfg = small_config(plan, 4096, 5);
    const auto g = cfg.grid();
    const auto bb = draw_basebands(plan, cfg);
    const auto y = apply_nonlinearity(synthesize_qpsk(plan, bb, cfg, g), {0.0, 1.0});
    const auto ls = intermod_residual(y, plan, bb, cfg, g);
    const auto an = intermod_residual_analytic(y, plan, {0.0, 1.0}, bb, cfg, g);
    for (int k = 1; k <= plan.size(); ++k)
    {
        const auto i = static_cast<std::size_t>(k - 1);
        CHECK(an.coefficients[i] == Approx(signal_term_amplitude(plan, {}, k) / plan.amplitude(k)));
        CHECK(ls.coefficients[i] == Approx(an.coefficients[i]).epsilon(0.05));
    }
    CHECK(energy(ls.residual) <= energy(an.residual));
    CHECK(energy(ls.residual) <= energy(y));
}

TEST_CASE("measure_qpsk_aci - unmodulated limit reproduces the coherent tone values")
{
    for (int N : {3, 5, 9})
    {
        const auto plan = sim_plan(std::vector<double>(static_cast<std::size_t>(N), 1.0));
        auto cfg = small_config(plan, 64);
        cfg.unmodulated = true;
        const auto report = measure_qpsk_aci(plan, {}, cfg, cfg.grid());
        // Every carrier is A cos(w t + pi/4).
        const std::vector<double> phases(static_cast<std::size_t>(N), std::numbers::pi / 4);
        for (int n = 1; n <= N; ++n)
        {
            const double expected = aci_power_coherent(plan, {}, n, phases);
            INFO("N=" << N << " n=" << n);
            CHECK(report.per_channel_power[static_cast<std::size_t>(n - 1)] == Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("measure_qpsk_aci - least squares absorbs co-phased products in the tone limit")
{
    const auto plan = sim_plan({1.0, 1.0, 1.0});
    auto cfg = small_config(plan, 64);
    cfg.unmodulated = true;
    const auto report = measure_qpsk_aci(plan, {}, cfg, cfg.grid(), SignalProjection::LeastSquares);
    for (double p : report.per_channel_power)
        CHECK(p < 1e-12);
}

TEST_CASE("measure_qpsk_aci - two carriers leave only a sidelobe floor")
{
    const auto plan = sim_plan({1.0, 1.0});
    const auto cfg = QpskConfig::defaults_for(plan);
    const auto report = measure_qpsk_aci(plan, {}, cfg, cfg.grid());
    const double n3_centre = aci_power(sim_plan({1.0, 1.0, 1.0}), {}, 2);
    for (double p : report.per_channel_power)
    {
        INFO("floor " << 10.0 * std::log10(p / n3_centre) << " dB");
        CHECK(10.0 * std::log10(n3_centre / p) >= 20.0);
    }
    CHECK(report.analytic_power == std::vector<double>{0.0, 0.0});
    CHECK(report.normalized_to_center.empty());
}

TEST_CASE("measure_qpsk_aci - band layout and centre normalisation")
{
    const auto plan = sim_plan(std::vector<double>(4, 1.0));
    const auto cfg = small_config(plan, 256);
    const auto r = measure_qpsk_aci(plan, {}, cfg, cfg.grid());
    REQUIRE(r.band_edges.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(r.band_edges[i].first == plan.frequency(static_cast<int>(i) + 1) - 0.5);
        CHECK(r.band_edges[i].second == plan.frequency(static_cast<int>(i) + 1) + 0.5);
        if (i > 0)
            CHECK(r.band_edges[i].first == r.band_edges[i - 1].second);
    }
    REQUIRE(r.normalized_to_center.size() == 4);
    const double sim_mid = 0.5 * (r.normalized_to_center[1] + r.normalized_to_center[2]);
    const double ana_mid = 0.5 * (r.analytic_power[1] + r.analytic_power[2]);
    CHECK(sim_mid == Approx(ana_mid).epsilon(1e-12));
}

TEST_CASE("measure_qpsk_aci - seeded runs are bit identical across thread counts")
{
    const auto plan = sim_plan(std::vector<double>(5, 1.0));
    const auto cfg = small_config(plan, 256, 99);
    const auto a = measure_qpsk_aci(plan, {}, cfg, cfg.grid(), SignalProjection::AnalyticGain, 1);
    const auto b = measure_qpsk_aci(plan, {}, cfg, cfg.grid(), SignalProjection::AnalyticGain, 3);
    const auto c = measure_qpsk_aci(plan, {}, cfg, cfg.grid(), SignalProjection::LeastSquares, 1);
    const auto d = measure_qpsk_aci(plan, {}, cfg, cfg.grid(), SignalProjection::LeastSquares, 4);
    CHECK(a.per_channel_power == b.per_channel_power);
    CHECK(c.per_channel_power == d.per_channel_power);
    auto other = cfg;
    other.seed = 100;
    CHECK(measure_qpsk_aci(plan, {}, other, other.grid()).per_channel_power != a.per_channel_power);
}

TEST_CASE("correlation - Pearson coefficient")
{
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(correlation(a, std::vector<double>{2.0, 4.0, 6.0, 8.0}) == Approx(1.0));
    CHECK(correlation(a, std::vector<double>{4.0, 3.0, 2.0, 1.0}) == Approx(-1.0));
    CHECK_THROWS_AS(correlation(a, std::vector<double>{1.0}), std::invalid_argument);
}
