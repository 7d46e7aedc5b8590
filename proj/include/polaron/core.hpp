// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Uniform 1D grids, grid functions and the discrete energy functional.
 *
 * Discretization conventions shared by every module:
 *  - the grid is symmetric with an odd node count, so x = 0 is a node;
 *  - integrals use trapezoid weights (h in the interior, h/2 at the ends);
 *  - derivatives live on cell midpoints, D_i = (f_{i+1} - f_i)/h, which makes
 *    the kinetic energy the exact Dirichlet integral of the piecewise-linear
 *    interpolant and its L2 gradient the 3-point Laplacian;
 *  - delta atoms read the nodal value with no quadrature weight.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polaron/toeplitz.hpp"

namespace polaron {

/// Discretization or grid-compatibility violation.
class DiscretizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical parameters: phonon coupling alpha, Coulomb strength beta, field B.
struct ModelParams {
  double alpha = 1.0;
  double beta = 1.0;
  double field = 1e6;

  /// Throws std::invalid_argument unless alpha >= 0, beta > 0, field > 1.
  void validate() const;
};

class Grid1D {
 public:
  Grid1D() = default;

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  double spacing() const { return spacing_; }
  std::size_t origin() const { return (n_ - 1) / 2; }

  double x(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(origin())) * spacing_;
  }
  /// Trapezoid weight of node i.
  double weight(std::size_t i) const {
    return (i == 0 || i + 1 == n_) ? 0.5 * spacing_ : spacing_;
  }
  std::vector<double> nodes() const;
  std::vector<double> weights() const;

  /// Index of the node nearest to x (clamped to the grid).
  std::size_t nearest(double x) const;

  bool operator==(const Grid1D& o) const {
    return n_ == o.n_ && half_width_ == o.half_width_;
  }

 private:
  friend Grid1D make_grid(double half_width, std::size_t n);
  double half_width_ = 1.0;
  std::size_t n_ = 3;
  double spacing_ = 1.0;
};

/// Uniform grid on [-half_width, half_width] with n nodes. Requires n odd, n >= 3.
Grid1D make_grid(double half_width, std::size_t n);

/// Real samples on a grid.
class GridFn {
 public:
  GridFn() = default;
  explicit GridFn(Grid1D grid);
  GridFn(Grid1D grid, std::vector<double> values);

  static GridFn sample(const Grid1D& grid, const std::function<double(double)>& f);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  GridFn& operator*=(double c);
  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

GridFn operator*(double c, GridFn f);
GridFn operator+(GridFn a, const GridFn& b);
GridFn operator-(GridFn a, const GridFn& b);

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* where);

double integrate(const GridFn& f);
double inner(const GridFn& f, const GridFn& g);
double l2_norm(const GridFn& f);
/// Returns f / l2_norm(f); throws std::domain_error on the zero function.
GridFn normalize(const GridFn& f);
double lp_norm_pow(const GridFn& f, double p);

/// Cell-midpoint differences (n - 1 values).
std::vector<double> cell_derivative(const GridFn& f);
/// (sum_cells h D^2)^{1/2}: the L2 norm of the derivative.
double derivative_norm(const GridFn& f);

/// -weight * |phi(node)|^2
struct DeltaAtom {
  std::size_t node = 0;
  double weight = 0.0;
};

/// Atom at position x; throws DiscretizationError if x is not a grid node.
DeltaAtom atom_at(const Grid1D& grid, double x, double weight);

/**
 * External potential in moment form: energy contribution sign * sum_i m_i f_i^2
 * where m_i = int V(x) hat_i(x) dx. Sampled potentials use m_i = V(x_i) w_i.
 */
struct ExternalPotential {
  std::vector<double> masses;
  double sign = 1.0;

  static ExternalPotential from_samples(const GridFn& v, double sign);
};

/// Declarative 1D energy functional on a fixed grid.
struct FunctionalSpec {
  Grid1D grid;
  double kinetic_coeff = 1.0;
  double quartic_coeff = 0.0;  ///< enters as -quartic_coeff * int f^4
  std::vector<DeltaAtom> atoms;
  std::optional<ExternalPotential> potential;
  std::optional<ToeplitzKernel> convolution;  ///< enters as -sum w_i w_j k_|i-j| f_i^2 f_j^2

  /// Throws DiscretizationError if any component disagrees with the grid.
  void validate() const;
};

/// Standard Pekar-with-delta spec: kinetic 1, quartic alpha/2, atom beta at 0.
FunctionalSpec pekar_spec(const Grid1D& grid, double alpha, double beta);

struct EnergySplit {
  double kinetic = 0.0;
  double quartic = 0.0;
  double delta = 0.0;
  double external = 0.0;
  double convolution = 0.0;
  double total = 0.0;
};

EnergySplit energy(const GridFn& f, const FunctionalSpec& spec);

}  // namespace polaron
