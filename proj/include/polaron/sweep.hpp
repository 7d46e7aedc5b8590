// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polaron/core.hpp"
#include "polaron/effpot.hpp"

namespace polaron::effpot {

/// Sum of one to three Gaussians with random centres, widths and signed amplitudes.
GridFn random_smooth_function(const Grid1D& grid, std::mt19937_64& rng);

struct SweepSpec {
  std::vector<double> fields{1e3, 1e8, 1e20};
  std::vector<double> lengths{0.05, 1.0};
  bool inverse_log_length = true;  ///< also test L = 1 / ln B
  std::size_t functions = 100;
  std::uint64_t seed = 20260101;
  double half_width = 10.0;
  std::size_t n = 8193;  ///< spacing below min(L) / 8 for L = 1 / ln 1e20
};

struct SweepSummary {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  ///< max lhs / rhs
};

/// All three extraction inequalities for every (function, B, L) combination.
SweepSummary extraction_sweep(const SweepSpec& spec);

}  // namespace polaron::effpot
