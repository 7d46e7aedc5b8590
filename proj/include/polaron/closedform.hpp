// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file closedform.hpp
 * @brief Exact minimizer and minimum of int|f'|^2 - (alpha/2) int f^4 - beta f(0)^2
 *        on the unit sphere, and Euler-Lagrange residual evaluators.
 */

#pragma once

#include "polaron/core.hpp"

namespace polaron::closedform {

/// -(alpha^2 + 6 alpha beta + 12 beta^2) / 48
double pekar_energy_closed(double alpha, double beta);
inline double pekar_energy_closed(const ModelParams& p) {
  return pekar_energy_closed(p.alpha, p.beta);
}

/// psi = sqrt(2 lambda/alpha) / cosh(sqrt(lambda) (|x| - tau)).
struct SechSolution {
  double lambda = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  double operator()(double x) const;
};

/// Throws std::domain_error for alpha <= 0 (use phi0_limit_alpha0).
SechSolution sech_solution(double alpha, double beta);

/// The minimizer; even, positive, maximal at the origin. Requires alpha > 0.
double phi0(double alpha, double beta, double x);

/// sqrt(beta/2) exp(-beta |x| / 2), the alpha -> 0 limit of phi0.
double phi0_limit_alpha0(double beta, double x);

/// Square of phi0_limit_alpha0: the limiting density at alpha = 0.
double density_limit_alpha0(double beta, double x);

/// Samples phi0 (alpha > 0) or its alpha = 0 limit.
GridFn sample_minimizer(const Grid1D& grid, double alpha, double beta);

struct ElResiduals {
  double interior = 0.0;        ///< max |-psi'' - alpha psi^3 + lambda psi| away from 0
  double jump = 0.0;            ///< |psi'(0-) - psi'(0+) - beta psi(0)|
  double first_integral = 0.0;  ///< max |psi'^2 + (alpha/2) psi^4 - lambda psi^2|
};

/**
 * Residuals of the Euler-Lagrange system. Interior maxima skip the origin,
 * its two neighbours and the two boundary nodes; one-sided derivatives at the
 * origin use second-order three-point stencils.
 */
ElResiduals el_residuals(const GridFn& psi, double alpha, double beta, double lambda);

}  // namespace polaron::closedform
