// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/cli/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "polaron/asymptotics.hpp"
#include "polaron/closedform.hpp"
#include "polaron/effpot.hpp"
#include "polaron/landau.hpp"
#include "polaron/perturbation.hpp"
#include "polaron/solver.hpp"
#include "polaron/sweep.hpp"
#include "polaron/toeplitz.hpp"

namespace polaron::cli {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = std::numbers::pi;

double pekar_formula(double a, double b) { return -(a * a + 6.0 * a * b + 12.0 * b * b) / 48.0; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

class Suite {
 public:
  Suite(bool quick, bool delta_fault) : quick_(quick), fault_(delta_fault) {}

  bool quick() const { return quick_; }

  /// The suite's own Pekar functional; the injected fault flips the delta sign.
  FunctionalSpec pekar(const Grid1D& g, double alpha, double beta) const {
    return pekar_spec(g, alpha, fault_ ? -beta : beta);
  }

  /// value <= threshold passes.
  void at_most(std::string name, double value, double threshold, std::string detail = {}) {
    results_.push_back({std::move(name), std::isfinite(value) && value <= threshold, value, threshold,
                        std::move(detail)});
  }
  void expect(std::string name, bool ok, std::string detail = {}) {
    results_.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)});
  }
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      results_.push_back({name, false, std::nan(""), 0.0, std::string("exception: ") + e.what()});
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  bool quick_;
  bool fault_;
  std::vector<CheckResult> results_;
};

Grid1D standard_grid(double alpha, double beta, std::size_t n = 8193) {
  return make_grid(40.0 / ((alpha + 2.0 * beta) / 4.0), n);
}

double max_l2_error(const GridFn& f, const GridFn& ref) { return l2_norm(f - ref); }

void closedform_checks(Suite& s) {
  s.guarded("closedform.energy_of_minimizer", [&] {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {4.0, 1.0}, {0.5, 2.0}}) {
      auto e = [&](const Grid1D& g) { return energy(closedform::sample_minimizer(g, a, b), pekar_spec(g, a, b)).total; };
      const Grid1D fine = standard_grid(a, b);
      const double er = (4.0 * e(fine) - e(solver::coarsen(fine))) / 3.0;
      worst = std::max(worst, std::abs(er - pekar_formula(a, b)) / std::abs(pekar_formula(a, b)));
    }
    s.at_most("closedform.energy_of_minimizer", worst, 1e-7, "two-grid energy of the sampled minimizer");
  });

  s.guarded("closedform.normalization", [&] {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, {4.0, 1.0}, {0.5, 2.0}}) {
      auto f = [a, b](double x) { const double p = closedform::phi0(a, b, x); return p * p; };
      const double R = 160.0 / (a + 2.0 * b);
      worst = std::max(worst, std::abs(2.0 * gauss_kronrod<double, 61>::integrate(f, 0.0, R, 15, 1e-14) - 1.0));
    }
    s.at_most("closedform.normalization", worst, 1e-10);
  });

  s.guarded("closedform.quartic_identity", [&] {
    auto f = [](double x) { const double p = closedform::phi0(1.0, 1.0, x); return p * p * p * p; };
    const double q = 2.0 * gauss_kronrod<double, 61>::integrate(f, 0.0, 60.0, 15, 1e-14);
    const double lam = closedform::sech_solution(1.0, 1.0).lambda;
    const double rhs = 2.0 * (lam + closedform::pekar_energy_closed(1.0, 1.0));
    s.at_most("closedform.quartic_identity", std::max(std::abs(q - rhs), std::abs(q - 1.0 / 3.0)), 1e-8,
              "int phi0^4 against 1/3 and (2/alpha)(lambda + e0)");
  });

  s.guarded("closedform.alpha0_limit", [&] {
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = 0.01 * k;
      worst = std::max(worst, std::abs(closedform::phi0(1e-6, 1.0, x) - closedform::phi0_limit_alpha0(1.0, x)));
    }
    s.at_most("closedform.alpha0_limit", worst, 1e-3);
  });

  s.guarded("closedform.el_second_order", [&] {
    const double lam = closedform::sech_solution(1.0, 1.0).lambda;
    std::vector<closedform::ElResiduals> r;
    for (std::size_t n : {1025u, 2049u, 4097u})
      r.push_back(closedform::el_residuals(closedform::sample_minimizer(make_grid(40.0, n), 1.0, 1.0), 1.0, 1.0, lam));
    double lo = 1e300, hi = 0.0;
    for (std::size_t k = 1; k < r.size(); ++k) {
      for (double ratio : {r[k - 1].interior / r[k].interior, r[k - 1].jump / r[k].jump}) {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    s.expect("closedform.el_second_order", lo >= 3.5 && hi <= 4.5,
             "residual ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  });
}

void solver_checks(Suite& s) {
  const double a = 1.0, b = 1.0;

  s.guarded("solver.el_jump", [&] {
    const Grid1D g = make_grid(40.0, 4097);
    const auto rep = solver::minimize(s.pekar(g, a, b));
    const auto el = closedform::el_residuals(rep.minimizer, a, b, rep.lambda);
    const double peak = rep.minimizer[g.origin()];
    s.at_most("solver.el_jump", el.jump / (b * peak), 1e-3, "jump residual relative to beta psi(0)");
    s.at_most("solver.el_interior", el.interior, 1e-5);
  });

  s.guarded("solver.closed_form_energy", [&] {
    std::vector<std::pair<double, double>> cases{{1.0, 1.0}};
    if (!s.quick()) cases.insert(cases.end(), {{2.0, 0.5}, {4.0, 1.0}, {0.5, 2.0}});
    double worst_e = 0.0, worst_l2 = 0.0;
    for (auto [al, be] : cases) {
      const Grid1D g = standard_grid(al, be);
      const auto ext = solver::minimize_extrapolated([&](const Grid1D& gg) { return s.pekar(gg, al, be); }, g);
      worst_e = std::max(worst_e, std::abs(ext.energy - pekar_formula(al, be)) / std::abs(pekar_formula(al, be)));
      worst_l2 = std::max(worst_l2, max_l2_error(ext.fine.minimizer, closedform::sample_minimizer(g, al, be)));
    }
    s.at_most("solver.closed_form_energy", worst_e, 1e-6, std::to_string(cases.size()) + " parameter pairs");
    s.at_most("solver.minimizer_l2", worst_l2, 1e-4);
  });

  s.guarded("solver.delta_well", [&] {
    double worst_e = 0.0, worst_l2 = 0.0;
    for (double be : {0.5, 1.0, 2.0}) {
      const Grid1D g = standard_grid(0.0, be);
      const auto ext = solver::minimize_extrapolated([&](const Grid1D& gg) { return s.pekar(gg, 0.0, be); }, g);
      worst_e = std::max(worst_e, std::abs(ext.energy + 0.25 * be * be) / (0.25 * be * be));
      worst_l2 = std::max(worst_l2, max_l2_error(ext.fine.minimizer, closedform::sample_minimizer(g, 0.0, be)));
    }
    s.at_most("solver.delta_well_energy", worst_e, 1e-6);
    s.at_most("solver.delta_well_minimizer", worst_l2, 1e-4);
  });

  s.guarded("solver.fd_gradient", [&] {
    const Grid1D g = make_grid(20.0, 1025);
    const auto spec = s.pekar(g, a, b);
    const GridFn f = solver::seed_function(spec, {});
    const double eps = 1e-5;
    s.at_most("solver.fd_gradient", solver::fd_gradient_error(f, spec, eps, 20), 1e2 * eps * eps,
              "20 random directions at eps 1e-5");
  });

  s.guarded("solver.energy_trace_monotone", [&] {
    const Grid1D g = make_grid(40.0, 2049);
    solver::SolveOptions opts;
    opts.fd_check_every = 100;
    const auto rep = solver::minimize(s.pekar(g, a, b), opts);
    bool mono = true;
    for (std::size_t k = 1; k < rep.energy_trace.size(); ++k) mono = mono && rep.energy_trace[k] <= rep.energy_trace[k - 1];
    s.expect("solver.energy_trace_monotone", mono && rep.converged);
    s.at_most("solver.fd_audit", rep.fd_max_error, 1e2 * opts.fd_epsilon * opts.fd_epsilon,
              std::to_string(rep.fd_checks) + " audits");
  });

  if (s.quick()) return;

  s.guarded("solver.translation_invariant", [&] {
    const Grid1D g = standard_grid(4.0, 0.0);
    const auto rep = solver::minimize(s.pekar(g, 4.0, 0.0));
    s.at_most("solver.translation_invariant", std::abs(rep.energy.total + 1.0 / 3.0) * 3.0, 1e-4);
  });

  s.guarded("solver.binding_inequality", [&] {
    const auto bc = solver::binding_inequality_check({a, b, 1e6}, make_grid(40.0, 4097));
    s.expect("solver.binding_inequality", bc.gap_positive && bc.gap_bound,
             "gap " + fmt(bc.gap) + ", beta phi_T(0)^2 " + fmt(bc.phiT0_sq));
  });
}

void toeplitz_checks(Suite& s) {
  s.guarded("toeplitz.fft_matches_direct", [&] {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    const std::size_t n = 3001;
    std::vector<double> row(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = std::exp(-0.01 * static_cast<double>(k)) * (1.0 + 0.1 * nd(rng));
      r[k] = nd(rng);
    }
    const ToeplitzKernel K(row, 0.01);
    const auto d = K.apply(r, ToeplitzKernel::Path::kDirect);
    const auto f = K.apply(r, ToeplitzKernel::Path::kFft);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(d[k] - f[k]));
      scale = std::max(scale, std::abs(d[k]));
    }
    s.at_most("toeplitz.fft_matches_direct", err / scale, 1e-12);
  });
}

double v_upper_polar_oracle(double B, double x) {
  // theta integral kept explicit: the oracle is a genuine 2D quadrature of |gamma_B|^2 / |r|
  auto radial = [B, x](double r) {
    const double g = effpot::gamma_landau(B, r);
    if (r == 0.0) return x == 0.0 ? g * g : 0.0;
    return g * g * (r / std::hypot(r, x));
  };
  boost::math::quadrature::exp_sinh<double> es;
  const double inner = es.integrate(radial, 0.0, std::numeric_limits<double>::infinity());
  return gauss_kronrod<double, 15>::integrate([inner](double) { return inner; }, 0.0, 2.0 * kPi, 0, 1e-14);
}

void effpot_checks(Suite& s) {
  s.guarded("effpot.v_upper_origin", [&] {
    double worst = 0.0;
    for (double B : {2.0, 1e6, 1e20})
      worst = std::max(worst, std::abs(effpot::v_upper(B, 0.0) / std::sqrt(kPi * B / 2.0) - 1.0));
    s.at_most("effpot.v_upper_origin", worst, 1e-10);
  });

  s.guarded("effpot.v_lower_origin", [&] {
    double worst = 0.0;
    for (double B : {2.0, 1e6, 1e20}) worst = std::max(worst, std::abs(effpot::v_lower(B, 0.0) / std::sqrt(2.0 * B) - 1.0));
    s.at_most("effpot.v_lower_origin", worst, 1e-14);
  });

  s.guarded("effpot.identities", [&] {
    double wu = 0.0, wl = 0.0;
    for (double B : {1e3, 1e8, 1e20})
      for (double L : {0.05, 0.1, 1.0}) {
        const double m = effpot::mu(B);
        wu = std::max(wu, std::abs(effpot::integral_v_upper_by_x(B, L) - (m + effpot::g_const(B, L))));
        wl = std::max(wl, std::abs(effpot::integral_v_lower_by_x(B, L) - (m + effpot::d_const(B, L))));
      }
    s.at_most("effpot.identity_upper", wu, 1e-7, "9 (B, L) points");
    s.at_most("effpot.identity_lower", wl, 1e-7, "9 (B, L) points");
  });

  s.guarded("effpot.orbital_oracle", [&] {
    double worst = 0.0;
    for (double B : {2.0, 1e3})
      for (double x : {0.0, 0.1, 1.0})
        worst = std::max(worst, std::abs(v_upper_polar_oracle(B, x) / effpot::v_upper(B, x) - 1.0));
    s.at_most("effpot.orbital_oracle", worst, 1e-8, "6 points against a polar quadrature of gamma_B");
  });

  s.guarded("effpot.extraction_sweep", [&] {
    effpot::SweepSpec spec;
    if (s.quick()) {
      spec.functions = 4;
      spec.fields = {1e3, 1e8};
      spec.lengths = {0.1, 1.0};
      spec.half_width = 5.0;
      spec.n = 1025;
      spec.inverse_log_length = false;
    } else {
      spec.functions = 30;
    }
    const auto r = effpot::extraction_sweep(spec);
    s.at_most("effpot.extraction_sweep", static_cast<double>(r.violations), 0.0,
              std::to_string(r.checks) + " checks, worst lhs/rhs " + fmt(r.worst_ratio));
  });

  if (s.quick()) return;

  s.guarded("effpot.landau_reproduces_orbital", [&] {
    const double B = 1.0;
    const effpot::SquareGrid grid{6.5, 105};
    const auto f = effpot::sample_2d(grid, [B](double x, double y) { return effpot::gamma_landau(B, std::hypot(x, y)); });
    const auto p = effpot::landau_projection_apply(B, grid, f);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
      for (std::size_t j = 0; j < grid.n; ++j)
        if (std::abs(grid.x(i)) <= 1.5 && std::abs(grid.x(j)) <= 1.5)
          worst = std::max(worst, std::abs(p[grid.index(i, j)] - f[grid.index(i, j)]));
    s.at_most("effpot.landau_reproduces_orbital", worst, 1e-6, "max deviation on |x_i| <= 1.5");
  });
}

void perturbation_checks(Suite& s) {
  const ModelParams p{1.0, 1.0, 1e6};
  const auto atom = perturbation::atom_potential(0.0, 1.0);

  s.guarded("perturbation.derivative_atom", [&] {
    const auto d = perturbation::derivative_check(atom, p);
    s.at_most("perturbation.derivative_atom", std::abs(d.right_extrapolated + 0.625), 1e-6,
              "extrapolated right secant against -phi0(0)^2");
    s.expect("perturbation.secant_order", d.order_right >= 0.9 && d.order_left >= 0.9,
             "orders " + fmt(d.order_right) + ", " + fmt(d.order_left));
    s.expect("perturbation.sandwich", d.sandwich_ok);
  });

  s.guarded("perturbation.closed_form_family", [&] {
    double worst = 0.0;
    for (double e : {-0.5, -0.1, 0.3, 1.0})
      worst = std::max(worst, std::abs(perturbation::e_eps(e, atom, p).energy - closedform::pekar_energy_closed(1.0, 1.0 + e)));
    s.at_most("perturbation.closed_form_family", worst, 1e-6);
  });

  s.guarded("perturbation.coercivity_guard", [&] {
    bool tripped = false;
    try {
      perturbation::e_eps(50.0, atom, p);
    } catch (const perturbation::CoercivityError&) {
      tripped = true;
    }
    s.expect("perturbation.coercivity_guard", tripped, "eps = 50 on the default grid");
  });

  if (s.quick()) return;

  s.guarded("perturbation.derivative_gaussian", [&] {
    const auto W = perturbation::gaussian_potential();
    const auto d = perturbation::derivative_check(W, p);
    s.at_most("perturbation.derivative_gaussian", std::abs(d.right_extrapolated - d.target), 1e-5,
              "target " + fmt(d.target));
  });
}

void asymptotics_checks(Suite& s) {
  s.guarded("asymptotics.fit_synthetic", [&] {
    std::vector<asymptotics::FitPoint> pts;
    for (double B : {1e6, 1e9, 1e12, 1e18, 1e24, 1e36}) {
      const double l = std::log(B);
      pts.push_back({B, -0.4 * l * l + 1.5 * l * std::log(l) + 0.7 * l});
    }
    const auto f = asymptotics::fit_expansion(pts);
    s.at_most("asymptotics.fit_synthetic",
              std::max({std::abs(f.a + 0.4) / 0.4, std::abs(f.b - 1.5) / 1.5, std::abs(f.c - 0.7) / 0.7}), 1e-8);
  });

  s.guarded("asymptotics.fit_underdetermined", [&] {
    bool thrown = false;
    try {
      asymptotics::fit_expansion({{1e6, -1.0}, {1e9, -2.0}, {1e12, -3.0}});
    } catch (const std::invalid_argument&) {
      thrown = true;
    }
    s.expect("asymptotics.fit_underdetermined", thrown);
  });

  s.guarded("asymptotics.trial_bound", [&] {
    const auto t = asymptotics::trial_upper_bound(1e12, {1.0, 1.0, 1e12});
    s.expect("asymptotics.trial_bound", t.holds, "value " + fmt(t.value) + " upper " + fmt(t.upper));
  });

  if (s.quick()) return;

  const ModelParams p{1.0, 1.0, 1e6};
  for (auto model : {asymptotics::Model::kHydrogenic, asymptotics::Model::kPolaron}) {
    const bool polaron = model == asymptotics::Model::kPolaron;
    const std::string tag = polaron ? "polaron" : "hydrogenic";
    s.guarded("asymptotics." + tag + "_ladder", [&] {
      asymptotics::LadderSpec spec;
      spec.model = model;
      spec.params = p;
      const auto pts = asymptotics::ladder_energies(spec);
      const double e0 = polaron ? pekar_formula(1.0, 1.0) : -0.25;

      std::vector<asymptotics::FitPoint> fp;
      bool sandwich = true, all_ok = true, gap_mono = true;
      double prev_gap = 1e300;
      for (const auto& pt : pts) {
        all_ok = all_ok && pt.ok;
        if (!pt.ok) continue;
        fp.push_back({pt.B, pt.e_eff});
        sandwich = sandwich && pt.trial >= pt.e_eff && std::abs(pt.e_eff - pt.mu * pt.mu * e0) <= pt.bracket;
        const double gap = std::abs(pt.e_eff / (pt.mu * pt.mu) - e0);
        gap_mono = gap_mono && gap <= prev_gap + 1e-6;
        prev_gap = gap;
      }
      s.expect("asymptotics." + tag + "_ladder_converged", all_ok);
      const auto fit = asymptotics::fit_expansion(fp);
      s.at_most("asymptotics." + tag + "_leading_coefficient", std::abs(fit.a - e0) / std::abs(e0), 0.03,
                "fit a " + fmt(fit.a));
      s.expect("asymptotics." + tag + "_sandwich", sandwich);
      s.expect("asymptotics." + tag + "_scaled_energy_monotone", gap_mono);

      if (!polaron) return;
      const auto atom = perturbation::atom_potential(0.0, 1.0);
      bool mono = true, l1_mono = true;
      double prev = -1e300, prev_l1 = 1e300, last_l1 = 0.0;
      for (const auto& pt : pts) {
        if (!pt.ok) continue;
        const double d = perturbation::density_pairing_from(pt.B, atom, pt.minimizer);
        const double l1 = perturbation::density_l1_distance(pt.B, p, pt.minimizer);
        mono = mono && std::abs(d - 0.625) <= std::abs(prev - 0.625) + 1e-6;
        l1_mono = l1_mono && l1 <= prev_l1 + 1e-6;
        prev = d;
        prev_l1 = l1;
        last_l1 = l1;
      }
      s.expect("asymptotics.density_pairing_monotone", mono);
      s.expect("asymptotics.density_l1", l1_mono && last_l1 <= 0.05, "final L1 distance " + fmt(last_l1));
    });
  }
}

}  // namespace

std::vector<CheckResult> run_checks(bool quick, const std::string& fault) {
  if (!fault.empty() && fault != "delta-sign") throw std::invalid_argument("verify: unknown fault '" + fault + "'");
  Suite s(quick, fault == "delta-sign");
  closedform_checks(s);
  solver_checks(s);
  toeplitz_checks(s);
  effpot_checks(s);
  perturbation_checks(s);
  asymptotics_checks(s);
  return s.take();
}

}  // namespace polaron::cli
