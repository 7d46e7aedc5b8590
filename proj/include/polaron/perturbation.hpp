// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file perturbation.hpp
 * @brief The perturbed energy e(eps) = min { E0(phi) - eps int W phi^2 }, its
 *        derivative at eps = 0 and the strong-field density pairing.
 *
 * W is a finite sum of point masses plus a bounded function. Point masses off
 * the grid are moved to the nearest node; the largest move is reported.
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "polaron/asymptotics.hpp"
#include "polaron/core.hpp"
#include "polaron/solver.hpp"

namespace polaron::perturbation {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

struct PerturbPotential {
  std::vector<Atom> atoms;
  std::function<double(double)> bounded;  ///< empty when W has no bounded part
  double bounded_sup = 0.0;              ///< sup |bounded|, enters the coercivity guard

  double atom_mass() const;  ///< sum |weights|
  /// Throws std::invalid_argument on non-finite data or a bounded part without a sup bound.
  void validate() const;
};

PerturbPotential atom_potential(double location, double weight);
/// W(x) = exp(-x^2 / width^2)
PerturbPotential gaussian_potential(double width = 1.0, double height = 1.0);

/// Raised when |eps| is too large for the coercivity bound at this resolution.
class CoercivityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Default grid for the unperturbed problem: half_width 40 / ((alpha + 2 beta)/4), n = 8193.
Grid1D default_grid(const ModelParams& p);

/**
 * Largest spacing accepted by the coercivity guard. With
 * kappa = alpha/2 + |eps| |mu|(R) + beta the energy is at least
 * (3/4) |phi'|^2 - kappa^2 - |eps| |omega|_inf, so minimizers satisfy
 * |phi'|^2 <= K = (4/3)(kappa^2 + |eps| |omega|_inf); the grid must resolve 1/sqrt(K)
 * with 8 nodes.
 */
double coercivity_max_spacing(double eps, const PerturbPotential& W, const ModelParams& p);

/// The perturbed functional on a grid; `snap` receives the largest atom move.
FunctionalSpec perturbed_spec(double eps, const PerturbPotential& W, const ModelParams& p,
                              const Grid1D& grid, double* snap = nullptr);

struct EpsResult {
  double eps = 0.0;
  double energy = 0.0;       ///< extrapolated minimum
  double grid_energy = 0.0;  ///< minimum on the fine grid
  double pairing = 0.0;      ///< int W phi_eps^2 on the fine grid
  double snap = 0.0;
  bool converged = false;
  GridFn minimizer;
};

EpsResult e_eps(double eps, const PerturbPotential& W, const ModelParams& p, const Grid1D& grid,
                const solver::SolveOptions& opts = {});
EpsResult e_eps(double eps, const PerturbPotential& W, const ModelParams& p);

/// int W phi^2 with atoms read at their snapped nodes.
double pairing(const PerturbPotential& W, const GridFn& phi);
/// -int W phi0^2 from the closed-form minimizer by adaptive quadrature.
double derivative_target(const PerturbPotential& W, const ModelParams& p);

struct DerivativeCheck {
  std::vector<double> eps;
  std::vector<double> left;   ///< (e0 - e(-eps)) / eps
  std::vector<double> right;  ///< (e(eps) - e0) / eps
  std::vector<double> two_sided;
  double target = 0.0;
  double right_extrapolated = 0.0;  ///< (10 s(eps/10) - s(eps)) / 9 at the smallest pair
  double left_extrapolated = 0.0;
  double order_right = 0.0;  ///< observed order of the right secant error
  double order_left = 0.0;
  double order_two_sided = 0.0;
  bool sandwich_ok = true;   ///< one-sided bounds hold for every run
  double e0 = 0.0;
};

DerivativeCheck derivative_check(const PerturbPotential& W, const ModelParams& p,
                                 const std::vector<double>& eps_ladder = {1e-2, 1e-3, 1e-4});
DerivativeCheck derivative_check(const PerturbPotential& W, const ModelParams& p,
                                 const std::vector<double>& eps_ladder, const Grid1D& grid,
                                 const solver::SolveOptions& opts);

/// (1/s) int W(x) rho(x/s) dx, s = mu(B), from a given field-B minimizer.
double density_pairing_from(double B, const PerturbPotential& W, const GridFn& minimizer);
/// Solves the classical field-B problem on the default ladder grid first.
double density_pairing(double B, const PerturbPotential& W, const ModelParams& p);

/// int |rho(y) - s phi0(s y)^2| dy, s = mu(B).
double density_l1_distance(double B, const ModelParams& p, const GridFn& minimizer);

}  // namespace polaron::perturbation
