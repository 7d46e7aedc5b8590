// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polaron::closedform {

namespace {

double artanh(double t) { return 0.5 * std::log((1.0 + t) / (1.0 - t)); }

}  // namespace

double pekar_energy_closed(double alpha, double beta) {
  return -(alpha * alpha + 6.0 * alpha * beta + 12.0 * beta * beta) / 48.0;
}

double SechSolution::operator()(double x) const {
  const double k = std::sqrt(lambda);
  return std::sqrt(2.0 * lambda / alpha) / std::cosh(k * (std::abs(x) - tau));
}

SechSolution sech_solution(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::domain_error("sech_solution: alpha must be > 0");
  const double s = alpha + 2.0 * beta;
  SechSolution sol;
  sol.alpha = alpha;
  sol.beta = beta;
  sol.lambda = (s / 4.0) * (s / 4.0);
  sol.tau = -(4.0 / s) * artanh(2.0 * beta / s);
  return sol;
}

double phi0(double alpha, double beta, double x) {
  if (!(alpha > 0.0)) throw std::domain_error("phi0: alpha must be > 0");
  const double s = alpha + 2.0 * beta;
  return s / (std::sqrt(8.0 * alpha) * std::cosh(0.25 * s * std::abs(x) + artanh(2.0 * beta / s)));
}

double phi0_limit_alpha0(double beta, double x) {
  return std::sqrt(0.5 * beta) * std::exp(-0.5 * beta * std::abs(x));
}

double density_limit_alpha0(double beta, double x) {
  return 0.5 * beta * std::exp(-beta * std::abs(x));
}

GridFn sample_minimizer(const Grid1D& grid, double alpha, double beta) {
  if (alpha > 0.0) return GridFn::sample(grid, [&](double x) { return phi0(alpha, beta, x); });
  return GridFn::sample(grid, [&](double x) { return phi0_limit_alpha0(beta, x); });
}

ElResiduals el_residuals(const GridFn& psi, double alpha, double beta, double lambda) {
  const auto& g = psi.grid();
  const std::size_t n = g.size();
  if (n < 7) throw DiscretizationError("el_residuals: need at least 7 nodes");
  const std::size_t o = g.origin();
  const double h = g.spacing();
  ElResiduals r;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t dist = i > o ? i - o : o - i;
    if (dist <= 1) continue;
    const double p = psi[i];
    const double d2 = (psi[i + 1] - 2.0 * p + psi[i - 1]) / (h * h);
    const double d1 = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
    r.interior = std::max(r.interior, std::abs(-d2 - alpha * p * p * p + lambda * p));
    r.first_integral =
        std::max(r.first_integral, std::abs(d1 * d1 + 0.5 * alpha * p * p * p * p - lambda * p * p));
  }
  const double right = (-3.0 * psi[o] + 4.0 * psi[o + 1] - psi[o + 2]) / (2.0 * h);
  const double left = (3.0 * psi[o] - 4.0 * psi[o - 1] + psi[o - 2]) / (2.0 * h);
  r.jump = std::abs(left - right - beta * psi[o]);
  return r;
}

}  // namespace polaron::closedform
