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

#include "im3/qpsk_sim.hpp"

#include "im3/im3_engine.hpp"
#include "im3/random.hpp"
#include "im3/spectrum.hpp"
#include "parallel.hpp"
#include "tone_table.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace im3
{

namespace
{

constexpr std::uint64_t qpsk_tag = 0x7170736bULL; // "qpsk"
constexpr std::size_t chunk_samples = 16384;

bool near_integer(double v)
{
    return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v));
}

std::size_t chunk_count(std::size_t samples)
{
    return (samples + chunk_samples - 1) / chunk_samples;
}

// Carrier waveforms of the real channels, generated one chunk at a time.
class CarrierBank
{
  public:
    CarrierBank(const ChannelPlan &plan, std::span<const QpskBaseband> basebands, const QpskConfig &cfg)
        : table_(static_cast<std::size_t>(std::llround(cfg.grid().sample_rate / plan.delta_f()))),
          sps_(static_cast<std::size_t>(cfg.samples_per_symbol))
    {
        if (basebands.size() != static_cast<std::size_t>(plan.size()))
            throw std::invalid_argument("QPSK: one baseband per channel is required");
        const auto offset = std::llround(plan.f0() / plan.delta_f());
        for (const auto &ch : plan.channels())
        {
            if (ch.is_pseudo)
                continue;
            const auto &bb = basebands[static_cast<std::size_t>(ch.index - 1)];
            if (bb.symbols.size() < cfg.num_symbols)
                throw std::invalid_argument("QPSK: baseband of channel " + std::to_string(ch.index) +
                                            " is shorter than num_symbols");
            channels_.push_back(ch.index);
            amplitudes_.push_back(ch.amplitude);
            bins_.push_back(static_cast<std::size_t>(offset + ch.index - 1));
            symbols_.push_back(&bb.symbols);
        }
    }

    std::size_t count() const { return channels_.size(); }
    int channel(std::size_t r) const { return channels_[r]; }

    // out[r * (hi - lo) + (m - lo)] = waveform of real channel r at sample m.
    void fill(std::size_t lo, std::size_t hi, std::vector<double> &out) const
    {
        const std::size_t width = hi - lo;
        out.assign(count() * width, 0.0);
        const std::size_t L = table_.length();
        for (std::size_t r = 0; r < count(); ++r)
        {
            const auto &sym = *symbols_[r];
            const double a = amplitudes_[r];
            std::size_t phase = static_cast<std::size_t>((static_cast<unsigned long long>(bins_[r]) * lo) % L);
            double *dst = out.data() + r * width;
            for (std::size_t m = lo; m < hi; ++m)
            {
                const auto &s = sym[m / sps_];
                dst[m - lo] = a * (s.real() * table_.cos(phase) - s.imag() * table_.sin(phase));
                phase += bins_[r];
                if (phase >= L)
                    phase -= L;
            }
        }
    }

  private:
    detail::ToneTable table_;
    std::size_t sps_;
    std::vector<int> channels_;
    std::vector<double> amplitudes_;
    std::vector<std::size_t> bins_;
    std::vector<const std::vector<std::complex<double>> *> symbols_;
};

void check_grid_matches(const QpskConfig &cfg, const SimulationGrid &grid)
{
    const SimulationGrid expected = cfg.grid();
    if (grid.num_samples != expected.num_samples ||
        std::abs(grid.sample_rate - expected.sample_rate) > 1e-12 * expected.sample_rate)
        throw std::invalid_argument("QPSK: grid does not match symbol_rate * samples_per_symbol and num_symbols");
}

ResidualResult subtract(std::span<const double> y, const ChannelPlan &plan, const CarrierBank &bank,
                        const Eigen::VectorXd &coeffs, unsigned threads)
{
    ResidualResult out;
    out.residual.assign(y.begin(), y.end());
    out.coefficients.assign(static_cast<std::size_t>(plan.size()), 0.0);
    for (std::size_t r = 0; r < bank.count(); ++r)
        out.coefficients[static_cast<std::size_t>(bank.channel(r) - 1)] = coeffs(static_cast<Eigen::Index>(r));

    detail::parallel_for(chunk_count(y.size()), threads, [&](std::size_t c) {
        const std::size_t lo = c * chunk_samples;
        const std::size_t hi = std::min(y.size(), lo + chunk_samples);
        std::vector<double> wave;
        bank.fill(lo, hi, wave);
        const std::size_t width = hi - lo;
        for (std::size_t r = 0; r < bank.count(); ++r)
        {
            const double g = coeffs(static_cast<Eigen::Index>(r));
            for (std::size_t m = 0; m < width; ++m)
                out.residual[lo + m] -= g * wave[r * width + m];
        }
    });
    return out;
}

} // namespace

QpskConfig QpskConfig::defaults_for(const ChannelPlan &plan)
{
    const double offset = plan.f0() / plan.delta_f();
    if (!near_integer(offset) || offset < 1.0)
        throw std::invalid_argument("QpskConfig: f0 must be a positive integer multiple of delta_f");
    const double needed = 24.0 * (std::round(offset) + plan.size() - 1);
    double units = 1.0;
    while (units < needed)
        units *= 2.0;

    QpskConfig cfg;
    cfg.symbol_rate = plan.delta_f() / 2.0;
    cfg.samples_per_symbol = static_cast<int>(2.0 * units);
    const std::size_t sps = static_cast<std::size_t>(cfg.samples_per_symbol);
    while (cfg.num_symbols > cfg.welch_segments && cfg.num_symbols * sps > max_simulation_samples)
        cfg.num_symbols /= 2;
    return cfg;
}

SimulationGrid QpskConfig::grid() const
{
    SimulationGrid g;
    g.sample_rate = symbol_rate * samples_per_symbol;
    g.num_samples = num_symbols * static_cast<std::size_t>(std::max(samples_per_symbol, 0));
    return g;
}

void QpskConfig::validate(const ChannelPlan &plan) const
{
    const double df = plan.delta_f();
    if (!std::isfinite(symbol_rate) || symbol_rate <= 0.0)
        throw std::invalid_argument("QpskConfig: symbol_rate must be positive");
    if (symbol_rate > 0.5 * df * (1.0 + 1e-12))
        throw std::invalid_argument("QpskConfig: symbol_rate must not exceed delta_f/2");
    if (samples_per_symbol < 8)
        throw std::invalid_argument("QpskConfig: samples_per_symbol must be >= 8");
    if (num_symbols == 0 || welch_segments == 0 || num_symbols % welch_segments != 0)
        throw std::invalid_argument("QpskConfig: welch_segments must divide a nonzero num_symbols");
    const SimulationGrid g = grid();
    if (g.num_samples > max_simulation_samples)
        throw std::invalid_argument("QpskConfig: num_samples exceeds 2^24");
    if (!near_integer(g.sample_rate / df))
        throw std::invalid_argument("QpskConfig: sample_rate must be an integer multiple of delta_f");
    if (!near_integer(plan.f0() / df) || plan.f0() <= 0.0)
        throw std::invalid_argument("QpskConfig: f0 must be a positive integer multiple of delta_f");
    if (!(g.sample_rate > 6.0 * plan.frequency(plan.size())))
        throw std::invalid_argument("QpskConfig: sample_rate must exceed 6 f_max");
    if (!plan.has_clean_im3_band())
        throw std::invalid_argument("QpskConfig: plan needs f0 > (N-1)*delta_f; use rehomed_for_simulation()");
}

std::vector<QpskBaseband> draw_basebands(const ChannelPlan &plan, const QpskConfig &cfg)
{
    const double h = std::numbers::sqrt2 / 2.0;
    std::vector<QpskBaseband> out(static_cast<std::size_t>(plan.size()));
    for (int k = 1; k <= plan.size(); ++k)
    {
        auto &sym = out[static_cast<std::size_t>(k - 1)].symbols;
        sym.resize(cfg.num_symbols, {h, h});
        if (cfg.unmodulated)
            continue;
        auto engine = make_stream(cfg.seed, static_cast<std::uint64_t>(k), qpsk_tag);
        for (auto &s : sym)
        {
            const auto bits = engine();
            s = {(bits & 1U) ? -h : h, (bits & 2U) ? -h : h};
        }
    }
    return out;
}

std::vector<double> synthesize_qpsk(const ChannelPlan &plan, std::span<const QpskBaseband> basebands,
                                    const QpskConfig &cfg, const SimulationGrid &grid, unsigned threads)
{
    cfg.validate(plan);
    check_grid_matches(cfg, grid);
    const CarrierBank bank(plan, basebands, cfg);
    std::vector<double> x(grid.num_samples, 0.0);
    detail::parallel_for(chunk_count(x.size()), threads, [&](std::size_t c) {
        const std::size_t lo = c * chunk_samples;
        const std::size_t hi = std::min(x.size(), lo + chunk_samples);
        std::vector<double> wave;
        bank.fill(lo, hi, wave);
        const std::size_t width = hi - lo;
        for (std::size_t r = 0; r < bank.count(); ++r)
            for (std::size_t m = 0; m < width; ++m)
                x[lo + m] += wave[r * width + m];
    });
    return x;
}

std::vector<double> synthesize_qpsk(const ChannelPlan &plan, const QpskConfig &cfg, const SimulationGrid &grid,
                                    unsigned threads)
{
    const auto basebands = draw_basebands(plan, cfg);
    return synthesize_qpsk(plan, basebands, cfg, grid, threads);
}

ResidualResult intermod_residual(std::span<const double> y, const ChannelPlan &plan,
                                 std::span<const QpskBaseband> basebands, const QpskConfig &cfg,
                                 const SimulationGrid &grid, unsigned threads)
{
    cfg.validate(plan);
    check_grid_matches(cfg, grid);
    if (y.size() != grid.num_samples)
        throw std::invalid_argument("intermod_residual: sequence length does not match the grid");
    const CarrierBank bank(plan, basebands, cfg);
    const auto R = static_cast<Eigen::Index>(bank.count());

    // Normal equations accumulated per fixed chunk, reduced in chunk order.
    const std::size_t chunks = chunk_count(y.size());
    std::vector<Eigen::MatrixXd> grams(chunks, Eigen::MatrixXd::Zero(R, R));
    std::vector<Eigen::VectorXd> rhs(chunks, Eigen::VectorXd::Zero(R));
    detail::parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * chunk_samples;
        const std::size_t hi = std::min(y.size(), lo + chunk_samples);
        const std::size_t width = hi - lo;
        std::vector<double> wave;
        bank.fill(lo, hi, wave);
        const Eigen::Map<const Eigen::MatrixXd> W(wave.data(), static_cast<Eigen::Index>(width), R);
        const Eigen::Map<const Eigen::VectorXd> Y(y.data() + lo, static_cast<Eigen::Index>(width));
        grams[c].noalias() = W.transpose() * W;
        rhs[c].noalias() = W.transpose() * Y;
    });
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(R, R);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(R);
    for (std::size_t c = 0; c < chunks; ++c)
    {
        G += grams[c];
        b += rhs[c];
    }

    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(R);
    if (R > 0)
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
        qr.setThreshold(1e-10);
        if (qr.rank() < R)
            throw std::runtime_error("intermod_residual: singular projection, carrier waveforms are linearly dependent");
        coeffs = qr.solve(b);
    }
    return subtract(y, plan, bank, coeffs, threads);
}

ResidualResult intermod_residual_analytic(std::span<const double> y, const ChannelPlan &plan,
                                          const NonlinearityModel &model, std::span<const QpskBaseband> basebands,
                                          const QpskConfig &cfg, const SimulationGrid &grid, unsigned threads)
{
    cfg.validate(plan);
    check_grid_matches(cfg, grid);
    if (y.size() != grid.num_samples)
        throw std::invalid_argument("intermod_residual_analytic: sequence length does not match the grid");
    const CarrierBank bank(plan, basebands, cfg);
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(bank.count()));
    for (std::size_t r = 0; r < bank.count(); ++r)
    {
        const int k = bank.channel(r);
        coeffs(static_cast<Eigen::Index>(r)) = signal_term_amplitude(plan, model, k) / plan.amplitude(k);
    }
    return subtract(y, plan, bank, coeffs, threads);
}

namespace
{

struct Pipeline
{
    std::vector<double> x_spectrum;
    std::vector<double> y3_spectrum;
    std::vector<double> residual_spectrum;
};

Pipeline run_pipeline(const ChannelPlan &plan, const NonlinearityModel &model, const QpskConfig &cfg,
                      const SimulationGrid &grid, SignalProjection projection, bool want_input_spectra,
                      unsigned threads)
{
    model.validate();
    const auto basebands = draw_basebands(plan, cfg);
    std::vector<double> signal = synthesize_qpsk(plan, basebands, cfg, grid, threads);
    Pipeline p;
    if (want_input_spectra)
        p.x_spectrum = averaged_periodogram(signal, cfg.welch_segments);
    for (auto &v : signal)
        v = model.rho1 * v + model.rho3 * v * v * v;
    if (want_input_spectra)
        p.y3_spectrum = averaged_periodogram(signal, cfg.welch_segments);
    const ResidualResult res =
        projection == SignalProjection::AnalyticGain
            ? intermod_residual_analytic(signal, plan, model, basebands, cfg, grid, threads)
            : intermod_residual(signal, plan, basebands, cfg, grid, threads);
    p.residual_spectrum = averaged_periodogram(res.residual, cfg.welch_segments);
    return p;
}

} // namespace

BandPowerReport measure_qpsk_aci(const ChannelPlan &plan, const NonlinearityModel &model, const QpskConfig &cfg,
                                 const SimulationGrid &grid, SignalProjection projection, unsigned threads)
{
    const Pipeline p = run_pipeline(plan, model, cfg, grid, projection, false, threads);
    const std::size_t seg_len = grid.num_samples / cfg.welch_segments;
    const double bins_per_hz = static_cast<double>(seg_len) / grid.sample_rate;

    BandPowerReport report;
    const double half = 0.5 * plan.delta_f();
    for (const auto &ch : plan.channels())
    {
        const double lo = ch.center_frequency - half;
        const double hi = ch.center_frequency + half;
        const auto k_lo = static_cast<std::size_t>(std::max(0.0, std::ceil(lo * bins_per_hz - 1e-9)));
        const auto k_hi = std::min(p.residual_spectrum.size(),
                                   static_cast<std::size_t>(std::max(0.0, std::ceil(hi * bins_per_hz - 1e-9))));
        double sum = 0.0;
        for (std::size_t k = k_lo; k < k_hi; ++k)
            sum += p.residual_spectrum[k];
        report.per_channel_power.push_back(sum);
        report.band_edges.emplace_back(lo, hi);
        report.analytic_power.push_back(aci_power(plan, model, ch.index));
    }

    const int N = plan.size();
    auto centre = [N](const std::vector<double> &v) {
        if (N % 2 == 1)
            return v[static_cast<std::size_t>((N - 1) / 2)];
        return 0.5 * (v[static_cast<std::size_t>(N / 2 - 1)] + v[static_cast<std::size_t>(N / 2)]);
    };
    const double sim_centre = centre(report.per_channel_power);
    const double ana_centre = centre(report.analytic_power);
    if (sim_centre > 0.0 && ana_centre > 0.0)
    {
        const double scale = ana_centre / sim_centre;
        for (double v : report.per_channel_power)
            report.normalized_to_center.push_back(v * scale);
    }
    return report;
}

QpskSpectra qpsk_spectra(const ChannelPlan &plan, const NonlinearityModel &model, const QpskConfig &cfg,
                         const SimulationGrid &grid, unsigned threads)
{
    Pipeline p = run_pipeline(plan, model, cfg, grid, SignalProjection::AnalyticGain, true, threads);
    QpskSpectra s;
    const std::size_t seg_len = grid.num_samples / cfg.welch_segments;
    s.frequency.resize(p.residual_spectrum.size());
    for (std::size_t k = 0; k < s.frequency.size(); ++k)
        s.frequency[k] = bin_frequency(k, grid.sample_rate, seg_len);
    s.x_spectrum = std::move(p.x_spectrum);
    s.y3_spectrum = std::move(p.y3_spectrum);
    s.intermod_spectrum = std::move(p.residual_spectrum);
    return s;
}

double correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("correlation: need two sequences of equal length >= 2");
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace im3
