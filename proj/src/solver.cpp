// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace polaron::solver {

namespace {

bool translation_invariant(const FunctionalSpec& spec) {
  return spec.atoms.empty() && !spec.potential;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// P = c A + s M with A the P1 stiffness matrix and M the lumped mass matrix,
// factored once per iteration by the Thomas algorithm.
class Preconditioner {
 public:
  Preconditioner(const Grid1D& g, double c, double s) : n_(g.size()), diag_(n_), off_(n_, 0.0) {
    const double h = g.spacing();
    for (std::size_t i = 0; i < n_; ++i) {
      const double stiff = (i == 0 || i + 1 == n_) ? 1.0 / h : 2.0 / h;
      diag_[i] = c * stiff + s * g.weight(i);
      if (i + 1 < n_) off_[i] = -c / h;
    }
    // forward elimination of the symmetric tridiagonal matrix
    cprime_.resize(n_);
    denom_.resize(n_);
    denom_[0] = diag_[0];
    cprime_[0] = off_[0] / denom_[0];
    for (std::size_t i = 1; i < n_; ++i) {
      denom_[i] = diag_[i] - off_[i - 1] * cprime_[i - 1];
      cprime_[i] = (i + 1 < n_) ? off_[i] / denom_[i] : 0.0;
    }
  }

  std::vector<double> solve(std::vector<double> b) const {
    b[0] /= denom_[0];
    for (std::size_t i = 1; i < n_; ++i) b[i] = (b[i] - off_[i - 1] * b[i - 1]) / denom_[i];
    for (std::size_t i = n_ - 1; i-- > 0;) b[i] -= cprime_[i] * b[i + 1];
    return b;
  }

 private:
  std::size_t n_;
  std::vector<double> diag_, off_, cprime_, denom_;
};

GridFn modulus_normalized(const Grid1D& g, std::span<const double> phi, std::span<const double> d,
                          double t) {
  std::vector<double> v(phi.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(phi[i] - t * d[i]);
  GridFn f(g, std::move(v));
  const double nrm = l2_norm(f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::domain_error("degenerate trial iterate");
  f *= 1.0 / nrm;
  return f;
}

GridFn recentered(const GridFn& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  const std::size_t peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const std::size_t o = f.grid().origin();
  if (peak == o) return f;
  std::vector<double> out(n, 0.0);
  const long shift = static_cast<long>(peak) - static_cast<long>(o);
  for (std::size_t i = 0; i < n; ++i) {
    const long src = static_cast<long>(i) + shift;
    if (src >= 0 && src < static_cast<long>(n)) out[i] = v[static_cast<std::size_t>(src)];
  }
  return normalize(GridFn(f.grid(), std::move(out)));
}

GridFn prolongate(const GridFn& coarse, const Grid1D& fine) {
  std::vector<double> v(fine.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) v[2 * k] = coarse[k];
  for (std::size_t k = 0; k + 1 < coarse.size(); ++k) v[2 * k + 1] = 0.5 * (coarse[k] + coarse[k + 1]);
  return normalize(GridFn(fine, std::move(v)));
}

GridFn restrict_to(const GridFn& fine, const Grid1D& coarse) {
  std::vector<double> v(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) v[k] = fine[2 * k];
  return GridFn(coarse, std::move(v));
}

}  // namespace

void SolveOptions::validate() const {
  if (max_iter == 0) throw std::invalid_argument("SolveOptions: max_iter must be >= 1");
  if (!(tol_energy > 0.0) || !(tol_grad > 0.0))
    throw std::invalid_argument("SolveOptions: tolerances must be > 0");
  if (!(step_init > 0.0)) throw std::invalid_argument("SolveOptions: step_init must be > 0");
  if (!(step_shrink > 0.0 && step_shrink < 1.0))
    throw std::invalid_argument("SolveOptions: step_shrink must lie in (0, 1)");
  if (!(step_grow >= 1.0)) throw std::invalid_argument("SolveOptions: step_grow must be >= 1");
  if (seed == SeedProfile::kCustom && !custom_seed)
    throw std::invalid_argument("SolveOptions: custom seed profile without a seed function");
}

GridFn variational_gradient(const GridFn& f, const FunctionalSpec& spec) {
  require_same_grid(f.grid(), spec.grid, "variational_gradient");
  const auto& g = spec.grid;
  const std::size_t n = g.size();
  const double h = g.spacing();
  std::vector<double> out(n, 0.0);

  if (spec.kinetic_coeff != 0.0) {
    // dE/df_i = (2c/h)(2f_i - f_{i-1} - f_{i+1}) with missing neighbours dropped
    const double c = spec.kinetic_coeff;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      if (i > 0) s += f[i] - f[i - 1];
      if (i + 1 < n) s += f[i] - f[i + 1];
      out[i] = 2.0 * c * s / (h * g.weight(i));
    }
  }
  if (spec.quartic_coeff != 0.0)
    for (std::size_t i = 0; i < n; ++i) out[i] -= 4.0 * spec.quartic_coeff * f[i] * f[i] * f[i];
  for (const auto& a : spec.atoms) out[a.node] -= 2.0 * a.weight * f[a.node] / g.weight(a.node);
  if (spec.potential) {
    const auto& p = *spec.potential;
    for (std::size_t i = 0; i < n; ++i) out[i] += 2.0 * p.sign * p.masses[i] * f[i] / g.weight(i);
  }
  if (spec.convolution) {
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = f[i] * f[i];
    const auto k = spec.convolution->apply(rho);
    for (std::size_t i = 0; i < n; ++i) out[i] -= 4.0 * f[i] * k[i];
  }
  return GridFn(g, std::move(out));
}

double fd_gradient_error(const GridFn& f, const FunctionalSpec& spec, double eps,
                         std::size_t directions, unsigned seed) {
  const GridFn grad = variational_gradient(f, spec);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (std::size_t k = 0; k < directions; ++k) {
    std::vector<double> v(f.size());
    for (auto& x : v) x = normal(rng);
    const GridFn dir = normalize(GridFn(f.grid(), std::move(v)));
    const double analytic = inner(grad, dir);
    const double ep = energy(f + eps * dir, spec).total;
    const double em = energy(f - eps * dir, spec).total;
    worst = std::max(worst, std::abs(analytic - (ep - em) / (2.0 * eps)));
  }
  return worst;
}

GridFn seed_function(const FunctionalSpec& spec, const SolveOptions& opts) {
  const auto& g = spec.grid;
  if (opts.seed == SeedProfile::kCustom) {
    if (!opts.custom_seed) throw std::invalid_argument("seed_function: no custom seed");
    require_same_grid(opts.custom_seed->grid(), g, "seed_function");
    std::vector<double> v(opts.custom_seed->values().begin(), opts.custom_seed->values().end());
    for (auto& x : v) x = std::abs(x);
    return normalize(GridFn(g, std::move(v)));
  }
  double width = opts.seed_width;
  if (!(width > 0.0)) {
    double strength = 2.0 * spec.quartic_coeff;
    for (const auto& a : spec.atoms) strength += 2.0 * std::abs(a.weight);
    width = strength > 0.0 ? 2.0 / strength : g.half_width() / 10.0;
  }
  const auto profile = opts.seed;
  return normalize(GridFn::sample(g, [&](double x) {
    const double t = x / width;
    switch (profile) {
      case SeedProfile::kSech: return 1.0 / std::cosh(t);
      case SeedProfile::kExponential: return std::exp(-std::abs(t));
      default: return std::exp(-0.5 * t * t);
    }
  }));
}

SolveReport minimize(const FunctionalSpec& spec, const SolveOptions& opts) {
  opts.validate();
  spec.validate();
  const auto& g = spec.grid;
  const std::size_t n = g.size();
  const bool recenter = opts.recenter_every > 0 && translation_invariant(spec);

  SolveReport rep;
  GridFn phi = seed_function(spec, opts);
  double E = energy(phi, spec).total;
  if (!std::isfinite(E)) throw SolverError("minimize: non-finite energy at the seed");
  rep.energy_trace.push_back(E);

  double step = -1.0;
  double last_drop = std::numeric_limits<double>::infinity();
  std::vector<double> rhs(n), wphi(n), dir(n);

  for (std::size_t iter = 0;; ++iter) {
    const GridFn grad = variational_gradient(phi, spec);
    const double gp = inner(grad, phi);
    rep.lambda = -0.5 * gp;

    const double shift = std::max(std::abs(rep.lambda), 1.0 / (g.half_width() * g.half_width()));
    const Preconditioner P(g, spec.kinetic_coeff, shift);
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = g.weight(i) * grad[i];
      wphi[i] = g.weight(i) * phi[i];
    }
    const auto d = P.solve(rhs);
    const auto z = P.solve(wphi);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += wphi[i] * d[i];
      den += wphi[i] * z[i];
    }
    const double m = num / den;
    double dual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = d[i] - m * z[i];
      dual += rhs[i] * dir[i];
    }
    rep.grad_residual = std::sqrt(std::max(dual, 0.0));
    const bool grad_ok = rep.grad_residual <= opts.tol_grad * std::sqrt(1.0 + std::abs(rep.lambda));

    if (opts.fd_check_every > 0 && iter % opts.fd_check_every == 0) {
      rep.fd_max_error = std::max(
          rep.fd_max_error, fd_gradient_error(phi, spec, opts.fd_epsilon, opts.fd_directions,
                                              12345u + static_cast<unsigned>(iter)));
      ++rep.fd_checks;
    }
    if (grad_ok && last_drop <= opts.tol_energy * (1.0 + std::abs(E))) {
      rep.converged = true;
      break;
    }
    if (iter >= opts.max_iter) break;
    rep.iterations = iter + 1;
    if (step < 0.0) step = opts.step_init * max_abs(phi.values()) / std::max(max_abs(dir), 1e-300);

    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      GridFn trial = modulus_normalized(g, phi.values(), dir, step);
      const double Et = energy(trial, spec).total;
      if (std::isnan(Et)) throw SolverError("minimize: NaN energy");
      if (Et < E) {
        last_drop = E - Et;
        E = Et;
        phi = std::move(trial);
        step *= opts.step_grow;
        accepted = true;
        break;
      }
      step *= opts.step_shrink;
    }
    if (!accepted) {
      rep.converged = grad_ok;
      break;
    }
    if (recenter && (iter + 1) % opts.recenter_every == 0) {
      GridFn c = recentered(phi);
      const double Ec = energy(c, spec).total;
      if (Ec <= E) {
        phi = std::move(c);
        E = Ec;
      }
    }
    rep.energy_trace.push_back(E);
  }

  rep.energy = energy(phi, spec);
  rep.minimizer = std::move(phi);
  return rep;
}

Grid1D coarsen(const Grid1D& fine) {
  if (fine.size() % 4 != 1 || fine.size() < 5)
    throw DiscretizationError("coarsen: node count must be 1 mod 4");
  return make_grid(fine.half_width(), (fine.size() + 1) / 2);
}

ExtrapolatedReport minimize_extrapolated(const SpecBuilder& build, const Grid1D& fine,
                                         const SolveOptions& opts) {
  const Grid1D coarse = coarsen(fine);
  SolveOptions copt = opts;
  if (opts.seed == SeedProfile::kCustom && opts.custom_seed)
    copt.custom_seed = restrict_to(*opts.custom_seed, coarse);
  ExtrapolatedReport out;
  out.coarse = minimize(build(coarse), copt);

  SolveOptions fopt = opts;
  fopt.seed = SeedProfile::kCustom;
  fopt.custom_seed = prolongate(out.coarse.minimizer, fine);
  out.fine = minimize(build(fine), fopt);
  out.energy = (4.0 * out.fine.energy.total - out.coarse.energy.total) / 3.0;
  out.converged = out.fine.converged && out.coarse.converged;
  return out;
}

BindingCheck binding_inequality_check(const ModelParams& p, const Grid1D& grid,
                                      const SolveOptions& opts, double tol) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw std::invalid_argument("binding_inequality_check: alpha and beta must be > 0");
  const auto full = minimize(pekar_spec(grid, p.alpha, p.beta), opts);
  const auto free = minimize(pekar_spec(grid, p.alpha, 0.0), opts);
  BindingCheck r;
  r.e0 = full.energy.total;
  r.eT = free.energy.total;
  r.gap = r.eT - r.e0;
  const double peak = max_abs(free.minimizer.values());
  r.phiT0_sq = peak * peak;
  r.gap_positive = r.gap > 0.0;
  r.gap_bound = r.gap >= p.beta * r.phiT0_sq - tol;
  return r;
}

double h1_distance(const GridFn& f, const GridFn& g) {
  require_same_grid(f.grid(), g.grid(), "h1_distance");
  const GridFn d = f - g;
  const double a = l2_norm(d);
  const double b = derivative_norm(d);
  return std::sqrt(a * a + b * b);
}

}  // namespace polaron::solver
