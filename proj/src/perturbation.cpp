// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/perturbation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "polaron/closedform.hpp"
#include "polaron/effpot.hpp"

namespace polaron::perturbation {

namespace {

double closed_min(const ModelParams& p, double x) {
  return p.alpha > 0.0 ? closedform::phi0(p.alpha, p.beta, x)
                       : closedform::phi0_limit_alpha0(p.beta, x);
}

double observed_order(const std::vector<double>& eps, const std::vector<double>& s, double target) {
  double order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < eps.size(); ++k) {
    const double e1 = std::abs(s[k - 1] - target);
    const double e2 = std::abs(s[k] - target);
    order = std::min(order, std::log(e1 / e2) / std::log(eps[k - 1] / eps[k]));
  }
  return order;
}

double first_order_extrapolation(const std::vector<double>& eps, const std::vector<double>& s) {
  const std::size_t k = s.size() - 1;
  const double r = eps[k - 1] / eps[k];
  return (r * s[k] - s[k - 1]) / (r - 1.0);
}

}  // namespace

double PerturbPotential::atom_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += std::abs(a.weight);
  return m;
}

void PerturbPotential::validate() const {
  for (const auto& a : atoms)
    if (!std::isfinite(a.location) || !std::isfinite(a.weight))
      throw std::invalid_argument("PerturbPotential: non-finite atom");
  if (bounded && !(bounded_sup > 0.0 && std::isfinite(bounded_sup)))
    throw std::invalid_argument("PerturbPotential: bounded part needs a finite sup bound");
}

PerturbPotential atom_potential(double location, double weight) {
  PerturbPotential w;
  w.atoms.push_back({location, weight});
  return w;
}

PerturbPotential gaussian_potential(double width, double height) {
  PerturbPotential w;
  w.bounded = [width, height](double x) { return height * std::exp(-(x / width) * (x / width)); };
  w.bounded_sup = std::abs(height);
  return w;
}

Grid1D default_grid(const ModelParams& p) {
  return make_grid(40.0 / ((p.alpha + 2.0 * p.beta) / 4.0), 8193);
}

double coercivity_max_spacing(double eps, const PerturbPotential& W, const ModelParams& p) {
  const double kappa = 0.5 * p.alpha + std::abs(eps) * W.atom_mass() + p.beta;
  const double kmax = (4.0 / 3.0) * (kappa * kappa + std::abs(eps) * W.bounded_sup);
  return 1.0 / (8.0 * std::sqrt(kmax));
}

FunctionalSpec perturbed_spec(double eps, const PerturbPotential& W, const ModelParams& p,
                              const Grid1D& grid, double* snap) {
  W.validate();
  if (grid.spacing() > coercivity_max_spacing(eps, W, p))
    throw CoercivityError("e_eps: |eps| too large for the coercivity bound on this grid");
  FunctionalSpec s = pekar_spec(grid, p.alpha, p.beta);
  double worst = 0.0;
  if (eps != 0.0) {
    for (const auto& a : W.atoms) {
      const std::size_t node = grid.nearest(a.location);
      worst = std::max(worst, std::abs(grid.x(node) - a.location));
      s.atoms.push_back({node, eps * a.weight});
    }
    if (W.bounded)
      s.potential = ExternalPotential::from_samples(GridFn::sample(grid, W.bounded), -eps);
  }
  if (snap) *snap = worst;
  return s;
}

double pairing(const PerturbPotential& W, const GridFn& phi) {
  const auto& g = phi.grid();
  double s = 0.0;
  for (const auto& a : W.atoms) {
    const double v = phi[g.nearest(a.location)];
    s += a.weight * v * v;
  }
  if (W.bounded)
    for (std::size_t i = 0; i < phi.size(); ++i) s += g.weight(i) * W.bounded(g.x(i)) * phi[i] * phi[i];
  return s;
}

double derivative_target(const PerturbPotential& W, const ModelParams& p) {
  double s = 0.0;
  for (const auto& a : W.atoms) {
    const double v = closed_min(p, a.location);
    s += a.weight * v * v;
  }
  if (W.bounded) {
    using boost::math::quadrature::gauss_kronrod;
    const double X = 160.0 / (p.alpha + 2.0 * p.beta);
    auto f = [&](double x) {
      const double v = closed_min(p, x);
      return W.bounded(x) * v * v;
    };
    s += gauss_kronrod<double, 31>::integrate(f, -X, 0.0, 25, 1e-14) +
         gauss_kronrod<double, 31>::integrate(f, 0.0, X, 25, 1e-14);
  }
  return -s;
}

EpsResult e_eps(double eps, const PerturbPotential& W, const ModelParams& p, const Grid1D& grid,
                const solver::SolveOptions& opts) {
  EpsResult r;
  r.eps = eps;
  // the guard runs on the fine grid before any solve
  perturbed_spec(eps, W, p, grid, &r.snap);
  const auto ext = solver::minimize_extrapolated(
      [&](const Grid1D& g) { return perturbed_spec(eps, W, p, g); }, grid, opts);
  r.energy = ext.energy;
  r.grid_energy = ext.fine.energy.total;
  r.converged = ext.converged;
  r.pairing = pairing(W, ext.fine.minimizer);
  r.minimizer = ext.fine.minimizer;
  return r;
}

EpsResult e_eps(double eps, const PerturbPotential& W, const ModelParams& p) {
  return e_eps(eps, W, p, default_grid(p));
}

DerivativeCheck derivative_check(const PerturbPotential& W, const ModelParams& p,
                                 const std::vector<double>& eps_ladder) {
  return derivative_check(W, p, eps_ladder, default_grid(p), {});
}

DerivativeCheck derivative_check(const PerturbPotential& W, const ModelParams& p,
                                 const std::vector<double>& eps_ladder, const Grid1D& grid,
                                 const solver::SolveOptions& opts) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("derivative_check: alpha must be > 0");
  if (eps_ladder.size() < 2) throw std::invalid_argument("derivative_check: need >= 2 eps values");
  DerivativeCheck d;
  d.eps = eps_ladder;
  d.target = derivative_target(W, p);
  const EpsResult base = e_eps(0.0, W, p, grid, opts);
  d.e0 = base.energy;
  const double p0 = base.pairing;

  for (double eps : eps_ladder) {
    if (!(eps > 0.0)) throw std::invalid_argument("derivative_check: eps must be > 0");
    const EpsResult up = e_eps(eps, W, p, grid, opts);
    const EpsResult dn = e_eps(-eps, W, p, grid, opts);
    d.right.push_back((up.energy - d.e0) / eps);
    d.left.push_back((d.e0 - dn.energy) / eps);
    d.two_sided.push_back((up.energy - dn.energy) / (2.0 * eps));

    // same-grid bounds: -P(phi_eps) - eps <= right <= -P(phi_0), -P(phi_0) <= left <= -P(phi_-eps)
    const double tol = 1e-10 * (1.0 + std::abs(base.grid_energy)) / eps;
    const double right_h = (up.grid_energy - base.grid_energy) / eps;
    const double left_h = (base.grid_energy - dn.grid_energy) / eps;
    const bool ok = right_h >= -up.pairing - eps - tol && right_h <= -p0 + tol &&
                    left_h >= -p0 - tol && left_h <= -dn.pairing + eps + tol;
    d.sandwich_ok = d.sandwich_ok && ok;
  }
  d.right_extrapolated = first_order_extrapolation(d.eps, d.right);
  d.left_extrapolated = first_order_extrapolation(d.eps, d.left);
  d.order_right = observed_order(d.eps, d.right, d.target);
  d.order_left = observed_order(d.eps, d.left, d.target);
  d.order_two_sided = observed_order(d.eps, d.two_sided, d.target);
  return d;
}

double density_pairing_from(double B, const PerturbPotential& W, const GridFn& minimizer) {
  W.validate();
  const double s = effpot::mu(B);
  const auto& g = minimizer.grid();
  double out = 0.0;
  for (const auto& a : W.atoms) {
    const std::size_t node = g.nearest(a.location / s);
    if (std::abs(g.x(node) * s - a.location) > 0.5 * g.spacing() * s + 1e-12)
      throw DiscretizationError("density_pairing: atom outside the computational window");
    out += a.weight * minimizer[node] * minimizer[node] / s;
  }
  if (W.bounded)
    for (std::size_t i = 0; i < minimizer.size(); ++i)
      out += g.weight(i) * W.bounded(s * g.x(i)) * minimizer[i] * minimizer[i];
  return out;
}

double density_pairing(double B, const PerturbPotential& W, const ModelParams& p) {
  const asymptotics::GridPolicy policy;
  const Grid1D grid = policy.grid_for(B);
  const auto spec = asymptotics::classical_1d_spec(B, p, grid);
  const auto rep = solver::minimize(spec, asymptotics::ladder_solve_options(B, p));
  return density_pairing_from(B, W, rep.minimizer);
}

double density_l1_distance(double B, const ModelParams& p, const GridFn& minimizer) {
  const double s = effpot::mu(B);
  const auto& g = minimizer.grid();
  double out = 0.0;
  for (std::size_t i = 0; i < minimizer.size(); ++i) {
    const double ref = closed_min(p, s * g.x(i));
    out += g.weight(i) * std::abs(minimizer[i] * minimizer[i] - s * ref * ref);
  }
  return out;
}

}  // namespace polaron::perturbation
