// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "polaron/closedform.hpp"
#include "polaron/effpot.hpp"
#include "polaron/parallel.hpp"

namespace polaron::asymptotics {

namespace {

const double kMinField = std::exp(std::exp(1.0));

void require_ladder_field(double B, const char* where) {
  if (!(B > kMinField) || !std::isfinite(B))
    throw std::invalid_argument(std::string(where) + ": field must exceed e^e");
}

ModelParams effective_params(const ModelParams& p, Model m) {
  ModelParams q = p;
  if (m == Model::kHydrogenic) q.alpha = 0.0;
  return q;
}

double bracket_term(double L, double g_abs, double d) {
  return 1.0 / L + 8.0 * std::sqrt(L) * std::pow(d, 1.5) + g_abs * d;
}

}  // namespace

Grid1D GridPolicy::grid_for(double B) const { return make_grid(width_factor / effpot::mu(B), n); }

void LadderSpec::validate() const {
  if (fields.empty()) throw std::invalid_argument("LadderSpec: no fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    require_ladder_field(fields[i], "LadderSpec");
    if (i > 0 && !(fields[i] > fields[i - 1]))
      throw std::invalid_argument("LadderSpec: fields must be strictly increasing");
  }
  if (!(params.alpha >= 0.0) || !(params.beta > 0.0))
    throw std::invalid_argument("LadderSpec: need alpha >= 0 and beta > 0");
}

solver::SolveOptions ladder_solve_options(double B, const ModelParams& p) {
  solver::SolveOptions o;
  o.seed_width = 2.0 / ((p.alpha + 2.0 * p.beta) * effpot::mu(B));
  return o;
}

FunctionalSpec classical_1d_spec(double B, const ModelParams& p, const Grid1D& grid) {
  require_ladder_field(B, "classical_1d_spec");
  const double m = effpot::mu(B);
  if (grid.spacing() > 1.0 / (8.0 * m))
    throw DiscretizationError("classical_1d_spec: spacing does not resolve the 1/mu(B) scale");
  if (grid.half_width() < 4.0 / m)
    throw DiscretizationError("classical_1d_spec: domain narrower than the 1/mu(B) scale");

  const effpot::UpperPotential v(B);
  FunctionalSpec s;
  s.grid = grid;
  s.kinetic_coeff = 1.0;
  if (p.alpha > 0.0) {
    auto row = effpot::kernel_row(v, grid);
    for (auto& k : row) k *= 0.5 * p.alpha;
    s.convolution = ToeplitzKernel(std::move(row), grid.spacing());
  }
  if (p.beta != 0.0) s.potential = ExternalPotential{effpot::hat_masses(v, grid), -p.beta};
  return s;
}

GridFn trial_state(double B, const ModelParams& p, const Grid1D& grid) {
  const double m = effpot::mu(B);
  const double sm = std::sqrt(m);
  if (p.alpha > 0.0)
    return normalize(GridFn::sample(grid, [&](double x) { return sm * closedform::phi0(p.alpha, p.beta, m * x); }));
  return normalize(GridFn::sample(grid, [&](double x) { return sm * closedform::phi0_limit_alpha0(p.beta, m * x); }));
}

double classical_bracket(double B, const ModelParams& p, const GridFn& f) {
  const double L = 1.0 / std::log(B);
  if (f.grid().spacing() > L / 8.0)
    throw DiscretizationError("classical_bracket: spacing exceeds L/8");
  const double d = derivative_norm(f);
  double out = 0.0;
  if (p.alpha > 0.0)
    out += 0.5 * p.alpha * bracket_term(L, std::abs(effpot::g_const(B, L / std::sqrt(2.0))), d);
  out += p.beta * bracket_term(L, std::abs(effpot::g_const(B, L)), d);
  return out;
}

TrialBound trial_upper_bound(double B, const ModelParams& p, const Grid1D& grid) {
  const auto spec = classical_1d_spec(B, p, grid);
  const GridFn f = trial_state(B, p, grid);
  const double m = effpot::mu(B);
  TrialBound t;
  t.value = energy(f, spec).total;
  t.reference = m * m * closedform::pekar_energy_closed(p.alpha, p.beta);
  t.bracket = classical_bracket(B, p, f);
  t.upper = t.reference + t.bracket;
  t.holds = t.value <= t.upper;
  return t;
}

TrialBound trial_upper_bound(double B, const ModelParams& p) {
  return trial_upper_bound(B, p, GridPolicy{}.grid_for(B));
}

std::vector<LadderPoint> ladder_energies(const LadderSpec& spec) {
  spec.validate();
  const ModelParams p = effective_params(spec.params, spec.model);
  return parallel_map<LadderPoint>(spec.fields.size(), [&](std::size_t i) {
    LadderPoint pt;
    pt.B = spec.fields[i];
    pt.log_b = std::log(pt.B);
    pt.mu = effpot::mu(pt.B);
    try {
      const Grid1D grid = spec.grid_policy.grid_for(pt.B);
      const auto fs = classical_1d_spec(pt.B, p, grid);
      const auto rep = solver::minimize(fs, ladder_solve_options(pt.B, p));
      pt.e_eff = rep.energy.total;
      pt.converged = rep.converged;
      pt.trial = energy(trial_state(pt.B, p, grid), fs).total;
      pt.bracket = classical_bracket(pt.B, p, rep.minimizer);
      pt.minimizer = rep.minimizer;
      pt.ok = rep.converged;
      if (!rep.converged) pt.error = "solver did not converge";
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
    return pt;
  });
}

FitResult fit_expansion(const std::vector<FitPoint>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_expansion: need at least 4 points");
  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd A(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double B = points[static_cast<std::size_t>(i)].B;
    if (!(B > kMinField)) throw std::invalid_argument("fit_expansion: field must exceed e^e");
    const double L = std::log(B);
    const double l = std::log(L);
    A(i, 0) = L * L;
    A(i, 1) = L * l;
    A(i, 2) = L;
    y(i) = points[static_cast<std::size_t>(i)].e;
  }
  // column scaling keeps the QR rank decision meaningful across magnitudes
  Eigen::Vector3d scale = A.colwise().norm().transpose();
  if ((scale.array() <= 0.0).any()) throw std::invalid_argument("fit_expansion: singular design");
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw std::invalid_argument("fit_expansion: singular design matrix");
  const Eigen::Vector3d coef = qr.solve(y).cwiseQuotient(scale);
  FitResult r;
  r.a = coef(0);
  r.b = coef(1);
  r.c = coef(2);
  r.residual = (A * coef - y).cwiseAbs().maxCoeff();
  return r;
}

double hydrogenic_expansion(double B, double beta) {
  require_ladder_field(B, "hydrogenic_expansion");
  const double L = std::log(B);
  const double l = std::log(L);
  const double b2 = beta * beta;
  const double ln2 = std::log(2.0);
  return B - 0.25 * b2 * L * L + b2 * L * l - b2 * (-0.5 * kEulerGamma + ln2) * L - b2 * l * l +
         2.0 * b2 * (-0.5 * kEulerGamma - 1.0 + ln2) * l;
}

}  // namespace polaron::asymptotics
