// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file asymptotics.hpp
 * @brief Classical strong-field 1D functionals, B-ladders and coefficient fits.
 *
 * At field B the lowest-Landau-level restricted energy (minus B) is
 *   int |f'|^2 - (alpha/2) int int f(x)^2 K(x-y) f(y)^2 - beta int V_U f^2,
 * K(z) = V_U(z / sqrt 2) / sqrt 2. Its minimizer lives on the length scale
 * 1/mu(B), mu(B) = ln B - 2 ln ln B, which the default grid policy follows.
 */

#pragma once

#include <string>
#include <vector>

#include "polaron/core.hpp"
#include "polaron/solver.hpp"

namespace polaron::asymptotics {

enum class Model { kPolaron, kHydrogenic };

struct GridPolicy {
  double width_factor = 40.0;  ///< half_width = width_factor / mu(B)
  std::size_t n = 4097;

  Grid1D grid_for(double B) const;
};

struct LadderSpec {
  std::vector<double> fields{1e6, 1e9, 1e12, 1e18, 1e24, 1e36};
  Model model = Model::kPolaron;
  ModelParams params{1.0, 1.0, 1e6};
  GridPolicy grid_policy{};

  /// Throws std::invalid_argument unless fields are strictly increasing and > e^e.
  void validate() const;
};

/// Default solver settings used along ladders.
solver::SolveOptions ladder_solve_options(double B, const ModelParams& p);

/// Throws DiscretizationError if the grid cannot resolve the 1/mu(B) scale.
FunctionalSpec classical_1d_spec(double B, const ModelParams& p, const Grid1D& grid);

/// Rescaled closed-form minimizer sqrt(mu) phi0(mu x), normalized on the grid.
GridFn trial_state(double B, const ModelParams& p, const Grid1D& grid);

/**
 * Error bracket for replacing V_U by mu(B) delta in the classical functional,
 * at L = 1/ln B: (alpha/2) b(G(B, L/sqrt 2)) + beta b(G(B, L)) with
 * b(G) = 1/L + 8 sqrt(L) |f'|^{3/2} + |G| |f'| for a normalized f.
 */
double classical_bracket(double B, const ModelParams& p, const GridFn& f);

struct TrialBound {
  double value = 0.0;      ///< classical functional at the trial state (B excluded)
  double reference = 0.0;  ///< mu(B)^2 e0
  double bracket = 0.0;
  double upper = 0.0;      ///< reference + bracket
  bool holds = false;      ///< value <= upper
};

TrialBound trial_upper_bound(double B, const ModelParams& p, const Grid1D& grid);
TrialBound trial_upper_bound(double B, const ModelParams& p);

struct LadderPoint {
  double B = 0.0;
  double log_b = 0.0;
  double mu = 0.0;
  double e_eff = 0.0;
  double trial = 0.0;
  double bracket = 0.0;  ///< a-posteriori bracket on the computed minimizer
  bool converged = false;
  bool ok = false;
  std::string error;
  GridFn minimizer;
};

/// One independent minimization per field, run in parallel, merged in field order.
std::vector<LadderPoint> ladder_energies(const LadderSpec& spec);

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual = 0.0;
};

struct FitPoint {
  double B;
  double e;
};

/// Least squares e = a (ln B)^2 + b ln B ln ln B + c ln B. Requires >= 4 points.
FitResult fit_expansion(const std::vector<FitPoint>& points);

/// Six-term strong-field expansion of the hydrogen ground state, B included.
double hydrogenic_expansion(double B, double beta);

inline constexpr double kEulerGamma = 0.5772156649015329;

}  // namespace polaron::asymptotics
