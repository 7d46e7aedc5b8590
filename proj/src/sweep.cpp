// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace polaron::effpot {

GridFn random_smooth_function(const Grid1D& grid, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> centre(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.3, 2.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  struct Bump {
    double c, w, a;
  };
  std::vector<Bump> bumps(static_cast<std::size_t>(count(rng)));
  for (auto& b : bumps) {
    b.c = centre(rng);
    b.w = width(rng);
    b.a = amp(rng);
  }
  bumps.front().a = std::copysign(std::max(std::abs(bumps.front().a), 0.2), bumps.front().a);
  return GridFn::sample(grid, [&](double x) {
    double s = 0.0;
    for (const auto& b : bumps) s += b.a * std::exp(-((x - b.c) * (x - b.c)) / (b.w * b.w));
    return s;
  });
}

SweepSummary extraction_sweep(const SweepSpec& spec) {
  const Grid1D grid = make_grid(spec.half_width, spec.n);
  std::mt19937_64 rng(spec.seed);
  std::vector<GridFn> fns;
  fns.reserve(spec.functions);
  for (std::size_t k = 0; k < spec.functions; ++k) fns.push_back(random_smooth_function(grid, rng));

  SweepSummary s;
  for (double B : spec.fields) {
    const ExtractionContext ctx(B, grid);
    std::vector<double> lengths = spec.lengths;
    if (spec.inverse_log_length) lengths.push_back(1.0 / std::log(B));
    for (const auto& f : fns)
      for (double L : lengths)
        for (auto kind : {ExtractionKind::kUpper, ExtractionKind::kLower, ExtractionKind::kConvolution}) {
          const auto r = ctx.check(L, f, kind);
          ++s.checks;
          if (!r.holds) ++s.violations;
          s.worst_ratio = std::max(s.worst_ratio, r.lhs / r.rhs);
        }
  }
  return s;
}

}  // namespace polaron::effpot
