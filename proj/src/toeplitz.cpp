// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/toeplitz.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

namespace polaron {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {}
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

struct ToeplitzKernel::FftPlan {
  std::size_t n = 0;
  std::size_t len = 0;  // cyclic length
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<std::complex<double>> kernel_hat;

  FftPlan(std::span<const double> row) : n(row.size()), len(next_pow2(2 * row.size())) {
    RealBuffer re(len);
    ComplexBuffer co(len / 2 + 1);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), re.data, co.data,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
      backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), co.data, re.data,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    for (std::size_t i = 0; i < len; ++i) re.data[i] = 0.0;
    for (std::size_t m = 0; m < n; ++m) re.data[m] = row[m];
    for (std::size_t m = 1; m < n; ++m) re.data[len - m] = row[m];
    fftw_execute_dft_r2c(forward, re.data, co.data);
    kernel_hat.resize(len / 2 + 1);
    for (std::size_t i = 0; i < len / 2 + 1; ++i)
      kernel_hat[i] = {co.data[i][0] / static_cast<double>(len),
                       co.data[i][1] / static_cast<double>(len)};
  }

  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void apply(std::span<const double> u, std::vector<double>& out) const {
    RealBuffer re(len);
    ComplexBuffer co(len / 2 + 1);
    for (std::size_t i = 0; i < len; ++i) re.data[i] = i < n ? u[i] : 0.0;
    fftw_execute_dft_r2c(forward, re.data, co.data);
    for (std::size_t i = 0; i < len / 2 + 1; ++i) {
      const std::complex<double> z(co.data[i][0], co.data[i][1]);
      const auto p = z * kernel_hat[i];
      co.data[i][0] = p.real();
      co.data[i][1] = p.imag();
    }
    fftw_execute_dft_c2r(backward, co.data, re.data);
    out.assign(re.data, re.data + n);
  }
};

ToeplitzKernel::ToeplitzKernel(std::vector<double> first_row, double spacing)
    : row_(std::move(first_row)), spacing_(spacing) {
  if (row_.size() < 2 || !(spacing_ > 0.0))
    throw std::invalid_argument("ToeplitzKernel: need >= 2 lags and positive spacing");
  if (row_.size() >= kFftThreshold) fft_ = std::make_shared<const FftPlan>(row_);
}

std::vector<double> ToeplitzKernel::apply(std::span<const double> r, Path path) const {
  const std::size_t n = row_.size();
  if (r.size() != n) throw std::invalid_argument("ToeplitzKernel::apply: size mismatch");
  std::vector<double> u(r.begin(), r.end());
  for (auto& v : u) v *= spacing_;
  u.front() *= 0.5;
  u.back() *= 0.5;

  if (path == Path::kAuto) path = n >= kFftThreshold ? Path::kFft : Path::kDirect;
  std::vector<double> out;
  if (path == Path::kFft) {
    if (fft_) {
      fft_->apply(u, out);
    } else {
      FftPlan(row_).apply(u, out);
    }
    return out;
  }
  out.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row_[i > j ? i - j : j - i] * u[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace polaron
