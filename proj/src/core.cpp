// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polaron {

void ModelParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("ModelParams: alpha must be >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("ModelParams: beta must be > 0");
  if (!(field > 1.0) || !std::isfinite(field))
    throw std::invalid_argument("ModelParams: field must be > 1");
}

Grid1D make_grid(double half_width, std::size_t n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DiscretizationError("make_grid: half_width must be positive");
  if (n < 3 || n % 2 == 0)
    throw DiscretizationError("make_grid: node count must be odd and >= 3, got " +
                              std::to_string(n));
  Grid1D g;
  g.half_width_ = half_width;
  g.n_ = n;
  g.spacing_ = 2.0 * half_width / static_cast<double>(n - 1);
  return g;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

std::vector<double> Grid1D::weights() const {
  std::vector<double> w(n_, spacing_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

std::size_t Grid1D::nearest(double xv) const {
  const double t = std::round(xv / spacing_) + static_cast<double>(origin());
  if (t <= 0.0) return 0;
  if (t >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(t);
}

GridFn::GridFn(Grid1D grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFn::GridFn(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DiscretizationError("GridFn: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw DiscretizationError("GridFn: non-finite value");
}

GridFn GridFn::sample(const Grid1D& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.x(i));
  return GridFn(grid, std::move(v));
}

GridFn& GridFn::operator*=(double c) {
  for (auto& v : values_) v *= c;
  return *this;
}

GridFn& GridFn::operator+=(const GridFn& o) {
  require_same_grid(grid_, o.grid_, "GridFn::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& o) {
  require_same_grid(grid_, o.grid_, "GridFn::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFn operator*(double c, GridFn f) { return f *= c; }
GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* where) {
  if (!(a == b)) throw DiscretizationError(std::string(where) + ": grid mismatch");
}

double integrate(const GridFn& f) {
  const auto& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += g.weight(i) * f[i];
  return s;
}

double inner(const GridFn& f, const GridFn& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  const auto& gr = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += gr.weight(i) * f[i] * g[i];
  return s;
}

double l2_norm(const GridFn& f) { return std::sqrt(inner(f, f)); }

GridFn normalize(const GridFn& f) {
  const double nrm = l2_norm(f);
  if (!(nrm > 0.0)) throw std::domain_error("normalize: zero function");
  GridFn out = f;
  out *= 1.0 / nrm;
  return out;
}

double lp_norm_pow(const GridFn& f, double p) {
  const auto& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += g.weight(i) * std::pow(std::abs(f[i]), p);
  return s;
}

std::vector<double> cell_derivative(const GridFn& f) {
  const double h = f.grid().spacing();
  std::vector<double> d(f.size() - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) d[i] = (f[i + 1] - f[i]) / h;
  return d;
}

double derivative_norm(const GridFn& f) {
  const double h = f.grid().spacing();
  double s = 0.0;
  for (double d : cell_derivative(f)) s += d * d;
  return std::sqrt(h * s);
}

DeltaAtom atom_at(const Grid1D& grid, double x, double weight) {
  const std::size_t i = grid.nearest(x);
  if (std::abs(grid.x(i) - x) > 1e-9 * grid.spacing())
    throw DiscretizationError("atom_at: location is not a grid node");
  return {i, weight};
}

ExternalPotential ExternalPotential::from_samples(const GridFn& v, double sign) {
  ExternalPotential p;
  p.sign = sign;
  p.masses.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p.masses[i] = v[i] * v.grid().weight(i);
  return p;
}

void FunctionalSpec::validate() const {
  if (!(kinetic_coeff >= 0.0) || !(quartic_coeff >= 0.0))
    throw DiscretizationError("FunctionalSpec: coefficients must be nonnegative");
  for (const auto& a : atoms)
    if (a.node >= grid.size()) throw DiscretizationError("FunctionalSpec: atom off grid");
  if (potential && potential->masses.size() != grid.size())
    throw DiscretizationError("FunctionalSpec: potential size does not match grid");
  if (convolution && (convolution->size() != grid.size() ||
                      convolution->spacing() != grid.spacing()))
    throw DiscretizationError("FunctionalSpec: convolution kernel does not match grid");
}

FunctionalSpec pekar_spec(const Grid1D& grid, double alpha, double beta) {
  FunctionalSpec s;
  s.grid = grid;
  s.kinetic_coeff = 1.0;
  s.quartic_coeff = 0.5 * alpha;
  if (beta != 0.0) s.atoms.push_back({grid.origin(), beta});
  return s;
}

EnergySplit energy(const GridFn& f, const FunctionalSpec& spec) {
  require_same_grid(f.grid(), spec.grid, "energy");
  spec.validate();
  const auto& g = spec.grid;
  const std::size_t n = g.size();
  const double h = g.spacing();
  EnergySplit e;

  if (spec.kinetic_coeff != 0.0) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = f[i + 1] - f[i];
      s += d * d;
    }
    e.kinetic = spec.kinetic_coeff * s / h;
  }
  if (spec.quartic_coeff != 0.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f2 = f[i] * f[i];
      s += g.weight(i) * f2 * f2;
    }
    e.quartic = -spec.quartic_coeff * s;
  }
  for (const auto& a : spec.atoms) e.delta -= a.weight * f[a.node] * f[a.node];
  if (spec.potential) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += spec.potential->masses[i] * f[i] * f[i];
    e.external = spec.potential->sign * s;
  }
  if (spec.convolution) {
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = f[i] * f[i];
    const auto krho = spec.convolution->apply(rho);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += g.weight(i) * rho[i] * krho[i];
    e.convolution = -s;
  }
  e.total = e.kinetic + e.quartic + e.delta + e.external + e.convolution;
  return e;
}

}  // namespace polaron
