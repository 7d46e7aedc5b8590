// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file effpot.hpp
 * @brief One-dimensional effective Coulomb potentials of the lowest Landau
 *        level and the delta-extraction constants.
 *
 * V_U(x) is the Coulomb potential averaged over the lowest Landau orbital,
 * V_L(x) the bathtub maximizer. Both behave like 1/|x| for |x| >> B^{-1/2}
 * and concentrate ln B - 2 ln ln B + O(1) of mass within |x| < 1/ln B, so on
 * any practical grid the core is unresolved. Grid functionals therefore use
 * product integration: the density is interpolated piecewise linearly and the
 * potential is integrated exactly against each hat function.
 */

#pragma once

#include <memory>
#include <vector>

#include "polaron/core.hpp"

namespace polaron::effpot {

/// int_0^inf e^{-u} / sqrt(x^2 + 2u/B) du, by adaptive quadrature in s = sqrt(u).
double v_upper(double B, double x3);

/// 2 / (sqrt(2/B + x^2) + |x|)
double v_lower(double B, double x3);

/// (1/sqrt 2) v_upper(B, lag / sqrt 2): the transverse-averaged self-interaction.
double self_interaction_kernel(double B, double lag);

/// mu(B) = ln B - 2 ln ln B
double mu(double B);

/// int_{|x| <= L} v_upper(B, x) dx, via the u-integral of 2 asinh(L/a(u)).
double integral_v_upper(double B, double L);
/// int_{|x| <= L} v_lower(B, x) dx in closed form.
double integral_v_lower(double B, double L);
/// The same two integrals by adaptive quadrature of the potential in x.
double integral_v_upper_by_x(double B, double L);
double integral_v_lower_by_x(double B, double L);

/// G(B, L); requires B > e.
double g_const(double B, double L);
/// G(B, L) without the 2 ln ln B term; requires B > 1.
double g_tilde_const(double B, double L);
/// D(B, L) in closed form; requires B > e.
double d_const(double B, double L);

/// Even potential with cumulative moments F0(x) = int_0^x V, F1(x) = int_0^x t V(t) dt.
class EffectivePotential {
 public:
  virtual ~EffectivePotential() = default;
  virtual double value(double x) const = 0;
  virtual double moment0(double x) const = 0;
  virtual double moment1(double x) const = 0;
};

class UpperPotential final : public EffectivePotential {
 public:
  explicit UpperPotential(double B);
  double value(double x) const override;
  double moment0(double x) const override;
  double moment1(double x) const override;

 private:
  double B_;
};

class LowerPotential final : public EffectivePotential {
 public:
  explicit LowerPotential(double B);
  double value(double x) const override;
  double moment0(double x) const override;
  double moment1(double x) const override;

 private:
  double B_;
};

/// m_i = int V(x) hat_i(x) dx for every node of the grid.
std::vector<double> hat_masses(const EffectivePotential& v, const Grid1D& grid);

/// Toeplitz first row k_m = (1/h) int K(z) hat_m(z) dz for K(z) = (1/sqrt 2) V(z / sqrt 2).
std::vector<double> kernel_row(const EffectivePotential& v, const Grid1D& grid);

enum class ExtractionKind { kUpper, kLower, kConvolution };

struct ExtractionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// Discretized potentials at one (B, grid), reusable across many test functions.
class ExtractionContext {
 public:
  ExtractionContext(double B, const Grid1D& grid);

  double field() const { return B_; }
  const Grid1D& grid() const { return grid_; }

  /// Product-integrated int V |phi|^2.
  double pair_upper(const GridFn& phi) const;
  double pair_lower(const GridFn& phi) const;
  /// Product-integrated double integral with the self-interaction kernel.
  double pair_self(const GridFn& phi) const;

  /// Throws DiscretizationError when spacing > L/8.
  ExtractionCheck check(double L, const GridFn& phi, ExtractionKind which) const;

 private:
  double B_;
  Grid1D grid_;
  std::vector<double> upper_;
  std::vector<double> lower_;
  ToeplitzKernel self_;
};

/// One-shot form of ExtractionContext::check; requires B > e.
ExtractionCheck delta_extraction_check(double B, double L, const GridFn& phi, ExtractionKind which);

}  // namespace polaron::effpot
