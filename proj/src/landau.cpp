// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/landau.hpp"

#include <cmath>
#include <numbers>

#include "polaron/core.hpp"

namespace polaron::effpot {

double gamma_landau(double B, double r_perp) {
  if (!(B > 0.0)) throw std::invalid_argument("gamma_landau: B must be > 0");
  return std::sqrt(B / (2.0 * std::numbers::pi)) * std::exp(-0.25 * B * r_perp * r_perp);
}

double l2_norm_2d(const SquareGrid& g, const Field2D& f) {
  const double h = g.spacing();
  auto w = [&](std::size_t i) { return (i == 0 || i + 1 == g.n) ? 0.5 * h : h; };
  double s = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) s += w(i) * w(j) * std::norm(f[g.index(i, j)]);
  return std::sqrt(s);
}

Field2D landau_projection_apply(double B, const SquareGrid& grid, const Field2D& f) {
  if (!(B > 0.0)) throw std::invalid_argument("landau_projection_apply: B must be > 0");
  const std::size_t n = grid.n;
  if (n < 3 || f.size() != n * n)
    throw DiscretizationError("landau_projection_apply: field does not match grid");
  const double h = grid.spacing();
  if (h > 1.0 / (8.0 * std::sqrt(B)))
    throw DiscretizationError("landau_projection_apply: fewer than 8 nodes per magnetic length");

  // gauss(i,k) = w_k exp(-B (x_i - x_k)^2 / 4), phase(i,k) = exp(i B x_i x_k / 2)
  std::vector<double> gauss(n * n);
  std::vector<std::complex<double>> phase(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = grid.x(i) - grid.x(k);
      const double wk = (k == 0 || k + 1 == n) ? 0.5 * h : h;
      gauss[i * n + k] = wk * std::exp(-0.25 * B * d * d);
      phase[i * n + k] = std::polar(1.0, 0.5 * B * grid.x(i) * grid.x(k));
    }
  }

  const double pref = B / (2.0 * std::numbers::pi);
  Field2D out(n * n);
  std::vector<std::complex<double>> inner(n * n);  // (y1, x2) for fixed x1
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        std::complex<double> s = 0.0;
        for (std::size_t k2 = 0; k2 < n; ++k2)
          s += gauss[i2 * n + k2] * phase[i1 * n + k2] * f[grid.index(k1, k2)];
        inner[k1 * n + i2] = s;
      }
    }
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      std::complex<double> s = 0.0;
      for (std::size_t k1 = 0; k1 < n; ++k1)
        s += gauss[i1 * n + k1] * std::conj(phase[i2 * n + k1]) * inner[k1 * n + i2];
      out[grid.index(i1, i2)] = pref * s;
    }
  }
  return out;
}

}  // namespace polaron::effpot
