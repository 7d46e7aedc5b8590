// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace polaron {

/**
 * Symmetric Toeplitz operator (T r)_i = sum_j w_j k_{|i-j|} r_j with trapezoid
 * weights w_j. Products use a direct O(n^2) loop below `kFftThreshold` nodes
 * and a zero-padded cyclic convolution (FFTW) at or above it.
 */
class ToeplitzKernel {
 public:
  static constexpr std::size_t kFftThreshold = 2049;

  enum class Path { kAuto, kDirect, kFft };

  ToeplitzKernel() = default;
  ToeplitzKernel(std::vector<double> first_row, double spacing);

  std::size_t size() const { return row_.size(); }
  double spacing() const { return spacing_; }
  std::span<const double> first_row() const { return row_; }

  std::vector<double> apply(std::span<const double> r, Path path = Path::kAuto) const;

 private:
  struct FftPlan;
  std::vector<double> row_;
  double spacing_ = 0.0;
  std::shared_ptr<const FftPlan> fft_;
};

}  // namespace polaron
