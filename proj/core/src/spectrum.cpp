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

#include "im3/spectrum.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

namespace im3
{

namespace
{

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}

class RealFft
{
  public:
    explicit RealFft(std::size_t length) : length_(length)
    {
        in_ = fftw_alloc_real(length);
        out_ = fftw_alloc_complex(length / 2 + 1);
        if (in_ == nullptr || out_ == nullptr)
        {
            release();
            throw std::bad_alloc();
        }
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(length), in_, out_, FFTW_ESTIMATE);
        if (plan_ == nullptr)
        {
            release();
            throw std::runtime_error("spectrum: FFTW planning failed");
        }
    }
    RealFft(const RealFft &) = delete;
    RealFft &operator=(const RealFft &) = delete;
    ~RealFft() { release(); }

    // Adds the one-sided bin powers of block to acc.
    void accumulate_power(std::span<const double> block, std::vector<double> &acc)
    {
        std::copy(block.begin(), block.end(), in_);
        fftw_execute(plan_);
        const double inv = 1.0 / static_cast<double>(length_);
        const std::size_t half = length_ / 2;
        for (std::size_t k = 0; k <= half; ++k)
        {
            const double re = out_[k][0] * inv;
            const double im = out_[k][1] * inv;
            const bool single = (k == 0) || (length_ % 2 == 0 && k == half);
            acc[k] += (single ? 1.0 : 2.0) * (re * re + im * im);
        }
    }

  private:
    void release()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan_ != nullptr)
            fftw_destroy_plan(plan_);
        if (in_ != nullptr)
            fftw_free(in_);
        if (out_ != nullptr)
            fftw_free(out_);
        plan_ = nullptr;
        in_ = nullptr;
        out_ = nullptr;
    }

    std::size_t length_;
    double *in_ = nullptr;
    fftw_complex *out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

} // namespace

std::vector<double> one_sided_power(std::span<const double> x)
{
    return averaged_periodogram(x, 1);
}

std::vector<double> averaged_periodogram(std::span<const double> x, std::size_t segments)
{
    if (x.empty())
        throw std::invalid_argument("averaged_periodogram: empty input");
    if (segments == 0 || x.size() % segments != 0)
        throw std::invalid_argument("averaged_periodogram: segment count must divide the sample count");
    const std::size_t len = x.size() / segments;
    RealFft fft(len);
    std::vector<double> acc(len / 2 + 1, 0.0);
    for (std::size_t s = 0; s < segments; ++s)
        fft.accumulate_power(x.subspan(s * len, len), acc);
    const double inv = 1.0 / static_cast<double>(segments);
    for (auto &v : acc)
        v *= inv;
    return acc;
}

} // namespace im3
