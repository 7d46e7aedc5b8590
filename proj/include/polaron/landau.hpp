// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file landau.hpp
 * @brief The lowest Landau orbital and the projection onto the lowest Landau
 *        level, evaluated by direct quadrature on small square grids.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polaron::effpot {

/// sqrt(B / 2 pi) exp(-B r^2 / 4)
double gamma_landau(double B, double r_perp);

/// Square grid [-half_width, half_width]^2 with n x n nodes, row-major (x1 major).
struct SquareGrid {
  double half_width = 1.0;
  std::size_t n = 3;

  double spacing() const { return 2.0 * half_width / static_cast<double>(n - 1); }
  double x(std::size_t i) const {
    return (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * spacing();
  }
  std::size_t index(std::size_t i1, std::size_t i2) const { return i1 * n + i2; }
};

using Field2D = std::vector<std::complex<double>>;

/// Samples g(x1, x2) on the grid.
template <class F>
Field2D sample_2d(const SquareGrid& g, F&& f) {
  Field2D out(g.n * g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) out[g.index(i, j)] = f(g.x(i), g.x(j));
  return out;
}

/// Trapezoid L2 norm of a sampled 2D field.
double l2_norm_2d(const SquareGrid& g, const Field2D& f);

/**
 * (P0 f)(x) = int (B/2pi) exp(-B|x-y|^2/4) exp(iB(x1 y2 - x2 y1)/2) f(y) dy.
 * Throws DiscretizationError unless the spacing is at most 1/(8 sqrt B).
 */
Field2D landau_projection_apply(double B, const SquareGrid& grid, const Field2D& f);

}  // namespace polaron::effpot
