// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Minimization of a FunctionalSpec over the unit L2 sphere.
 *
 * The iteration is a projected gradient descent in the H1-type metric
 * P = kinetic_coeff * A + shift * M (A the P1 stiffness matrix, M the lumped
 * mass matrix). The preconditioned Riemannian gradient is
 * P^{-1} dE - m P^{-1} M phi with m chosen so the step is tangent to the
 * sphere. Every trial iterate is replaced by its modulus and renormalized, and
 * only energy-decreasing steps are accepted.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polaron/core.hpp"

namespace polaron::solver {

/// Raised when the energy becomes non-finite during a solve.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SeedProfile { kGaussian, kSech, kExponential, kCustom };

struct SolveOptions {
  std::size_t max_iter = 20000;
  double tol_energy = 1e-13;  ///< relative decrease of the last accepted step
  double tol_grad = 1e-6;     ///< preconditioned projected-gradient norm, relative to sqrt(1 + |lambda|)
  double step_init = 0.1;     ///< first step as a fraction of |phi|_inf / |direction|_inf
  double step_shrink = 0.5;
  double step_grow = 1.5;
  SeedProfile seed = SeedProfile::kGaussian;
  double seed_width = 0.0;          ///< 0 selects a width from the spec coefficients
  std::optional<GridFn> custom_seed;
  std::size_t recenter_every = 50;  ///< translation-invariant specs only; 0 disables
  std::size_t fd_check_every = 0;   ///< 0 disables the finite-difference audit
  std::size_t fd_directions = 20;
  double fd_epsilon = 1e-5;

  /// Throws std::invalid_argument on non-positive tolerances or max_iter = 0.
  void validate() const;
};

struct SolveReport {
  GridFn minimizer;
  EnergySplit energy;
  double lambda = 0.0;         ///< Lagrange multiplier estimate -<g, phi>/2
  double grad_residual = 0.0;  ///< <dE, P^{-1} dE> on the tangent space, square-rooted
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> energy_trace;
  std::size_t fd_checks = 0;
  double fd_max_error = 0.0;  ///< max |<g,h> - central difference| over audited directions
};

/// L2 gradient of the discrete energy: dE/df_i divided by the node weight.
GridFn variational_gradient(const GridFn& f, const FunctionalSpec& spec);

/// Max over `directions` seeded random unit directions of |<g,h> - (E(f+eh)-E(f-eh))/2e|.
double fd_gradient_error(const GridFn& f, const FunctionalSpec& spec, double eps,
                         std::size_t directions, unsigned seed = 12345);

/// Initial iterate for a spec (normalized, nonnegative).
GridFn seed_function(const FunctionalSpec& spec, const SolveOptions& opts);

SolveReport minimize(const FunctionalSpec& spec, const SolveOptions& opts = {});

/// Solves on `fine` and on the nested grid with (n + 1) / 2 nodes and combines
/// the two minima as (4 E_h - E_2h) / 3. Requires n = 1 mod 4.
struct ExtrapolatedReport {
  SolveReport fine;
  SolveReport coarse;
  double energy = 0.0;
  bool converged = false;
};

using SpecBuilder = std::function<FunctionalSpec(const Grid1D&)>;

ExtrapolatedReport minimize_extrapolated(const SpecBuilder& build, const Grid1D& fine,
                                         const SolveOptions& opts = {});

/// Nested coarse grid of `fine` (every other node).
Grid1D coarsen(const Grid1D& fine);

struct BindingCheck {
  double e0 = 0.0;
  double eT = 0.0;
  double gap = 0.0;
  double phiT0_sq = 0.0;  ///< phi_T(0)^2 of the re-centred translation-invariant minimizer
  bool gap_positive = false;
  bool gap_bound = false;  ///< gap >= beta phi_T(0)^2 - tol
};

BindingCheck binding_inequality_check(const ModelParams& p, const Grid1D& grid,
                                      const SolveOptions& opts = {}, double tol = 1e-8);

/// (|f - g|_2^2 + |f' - g'|_2^2)^{1/2} with cell-midpoint derivatives.
double h1_distance(const GridFn& f, const GridFn& g);

}  // namespace polaron::solver
