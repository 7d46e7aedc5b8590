// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polaron/asymptotics.hpp"
#include "polaron/cli/commands.hpp"
#include "polaron/closedform.hpp"
#include "polaron/effpot.hpp"
#include "polaron/landau.hpp"
#include "polaron/perturbation.hpp"
#include "polaron/solver.hpp"
#include "polaron/sweep.hpp"

using namespace polaron;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double pekar_formula(double a, double b) { return -(a * a + 6.0 * a * b + 12.0 * b * b) / 48.0; }

void closed_form_reproduction() {
  bool ok = true;
  std::string detail;
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {4.0, 1.0}, {0.5, 2.0}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D g = make_grid(40.0 / ((a + 2.0 * b) / 4.0), 8193);
    const auto ext = solver::minimize_extrapolated([&](const Grid1D& gg) { return pekar_spec(gg, a, b); }, g);
    const double secs = seconds_since(t0);
    const double rel = std::abs(ext.energy - pekar_formula(a, b)) / std::abs(pekar_formula(a, b));
    const double l2 = l2_norm(ext.fine.minimizer - GridFn::sample(g, [&](double x) { return oracle::phi0(a, b, x); }));
    ok = ok && ext.converged && rel <= 1e-6 && l2 <= 1e-4 && secs <= 10.0;
    detail += "(" + f("%g", a) + "," + f("%g", b) + ") rel " + f("%.1e", rel) + " L2 " + f("%.1e", l2) + " " +
              f("%.2fs", secs) + "; ";
  }
  report(1, "closed-form energy reproduction", ok, detail);
}

void euler_lagrange() {
  const double lam = oracle::lambda(1.0, 1.0);
  std::vector<closedform::ElResiduals> r;
  for (std::size_t n : {1025u, 2049u, 4097u})
    r.push_back(closedform::el_residuals(closedform::sample_minimizer(make_grid(40.0, n), 1.0, 1.0), 1.0, 1.0, lam));
  bool ok = true;
  std::string detail;
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double ri = r[k - 1].interior / r[k].interior;
    const double rj = r[k - 1].jump / r[k].jump;
    ok = ok && ri >= 3.5 && ri <= 4.5 && rj >= 3.5 && rj <= 4.5;
    detail += "interior " + f("%.3f", ri) + " jump " + f("%.3f", rj) + "; ";
  }
  report(2, "Euler-Lagrange residual order", ok, detail);
}

void delta_well() {
  bool ok = true;
  std::string detail;
  for (double b : {0.5, 1.0, 2.0}) {
    const Grid1D g = make_grid(80.0 / b, 8193);
    const auto ext = solver::minimize_extrapolated([&](const Grid1D& gg) { return pekar_spec(gg, 0.0, b); }, g);
    const double de = std::abs(ext.energy + b * b / 4.0);
    const double l2 = l2_norm(ext.fine.minimizer - GridFn::sample(g, [b](double x) { return oracle::delta_well(b, x); }));
    ok = ok && de <= 1e-6 && l2 <= 1e-4;
    detail += "beta " + f("%g", b) + ": |dE| " + f("%.1e", de) + " L2 " + f("%.1e", l2) + "; ";
  }
  report(3, "delta-well exact case", ok, detail);
}

void quartic_identity() {
  auto p4 = [](double x) { const double p = closedform::phi0(1.0, 1.0, x); return p * p * p * p; };
  const double q = 2.0 * oracle::integrate_tanh_sinh(p4, 0.0, 80.0);
  const double via_lambda = 2.0 * (closedform::sech_solution(1.0, 1.0).lambda + closedform::pekar_energy_closed(1.0, 1.0));
  const double err = std::max(std::abs(q - 1.0 / 3.0), std::abs(via_lambda - 1.0 / 3.0));
  report(4, "quartic integral identity", err <= 1e-8, "max deviation " + f("%.1e", err));
}

void potential_identities() {
  double origin = 0.0;
  for (double B : {2.0, 1e6, 1e20})
    origin = std::max(origin, std::abs(effpot::v_upper(B, 0.0) / std::sqrt(M_PI * B / 2.0) - 1.0));
  double ident_u = 0.0, ident_l = 0.0;
  for (double B : {1e3, 1e8, 1e20})
    for (double L : {0.05, 0.1, 1.0}) {
      const double m = effpot::mu(B);
      ident_u = std::max(ident_u, std::abs(oracle::integral_v_upper(B, L) - (m + effpot::g_const(B, L))));
      const double lower = 2.0 * oracle::integrate_tanh_sinh(
                                     [B](double x) { return 2.0 / (std::sqrt(2.0 / B + x * x) + x); }, 0.0, L);
      ident_l = std::max(ident_l, std::abs(lower - (m + effpot::d_const(B, L))));
    }
  double orbital = 0.0;
  for (double B : {2.0, 1e3, 1e6})
    for (double t : {0.5, 2.0}) {
      const double x = t * std::sqrt(2.0 / B);
      const double q = oracle::orbital_average_2d([B](double r) { return effpot::gamma_landau(B, r); }, B, x);
      orbital = std::max(orbital, std::abs(q / effpot::v_upper(B, x) - 1.0));
    }
  const bool ok = origin <= 1e-10 && ident_u <= 1e-7 && ident_l <= 1e-7 && orbital <= 1e-8;
  report(5, "effective-potential identities", ok,
         "origin " + f("%.1e", origin) + ", upper identity " + f("%.1e", ident_u) + ", lower identity " +
             f("%.1e", ident_l) + ", 2D orbital " + f("%.1e", orbital));
}

void extraction_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  effpot::SweepSpec s;
  s.functions = 100;
  s.fields = {1e3, 1e8, 1e20};
  s.lengths = {0.05, 1.0};
  s.inverse_log_length = true;
  const auto r = effpot::extraction_sweep(s);
  const double secs = seconds_since(t0);
  report(6, "extraction inequality sweep", r.violations == 0 && r.checks == 2700 && secs <= 60.0,
         std::to_string(r.checks) + " checks, " + std::to_string(r.violations) + " violations, worst lhs/rhs " +
             f("%.3f", r.worst_ratio) + ", " + f("%.1fs", secs));
}

struct Ladders {
  std::vector<asymptotics::LadderPoint> hydrogenic;
  std::vector<asymptotics::LadderPoint> polaron;
};

Ladders run_ladders() {
  Ladders l;
  asymptotics::LadderSpec s;
  s.params = {1.0, 1.0, 1e6};
  s.model = asymptotics::Model::kHydrogenic;
  l.hydrogenic = asymptotics::ladder_energies(s);
  s.model = asymptotics::Model::kPolaron;
  l.polaron = asymptotics::ladder_energies(s);
  return l;
}

asymptotics::FitResult fit(const std::vector<asymptotics::LadderPoint>& pts) {
  std::vector<asymptotics::FitPoint> fp;
  for (const auto& p : pts)
    if (p.ok) fp.push_back({p.B, p.e_eff});
  return asymptotics::fit_expansion(fp);
}

void coefficient_recovery(const Ladders& l) {
  const auto h = fit(l.hydrogenic);
  const auto p = fit(l.polaron);
  const double e0 = pekar_formula(1.0, 1.0);
  const double dh = std::abs(h.a + 0.25) / 0.25;
  const double dp = std::abs(p.a - e0) / std::abs(e0);
  report(7, "leading coefficient recovery", dh <= 0.03 && dp <= 0.03,
         "hydrogenic a " + f("%.5f", h.a) + " (" + f("%.2f%%", 100 * dh) + "), polaron a " + f("%.5f", p.a) + " (" +
             f("%.2f%%", 100 * dp) + "); logged only: hydrogenic b " + f("%.3f", h.b) + " vs +1, polaron b " +
             f("%.3f", p.b) + " vs " + f("%.3f", -4.0 * e0));
}

void sandwich(const Ladders& l) {
  int violations = 0, points = 0;
  for (auto [pts, e0] : {std::pair{&l.hydrogenic, -0.25}, {&l.polaron, pekar_formula(1.0, 1.0)}})
    for (const auto& p : *pts) {
      ++points;
      if (!p.ok || p.trial < p.e_eff || std::abs(p.e_eff - p.mu * p.mu * e0) > p.bracket) ++violations;
    }
  report(8, "variational sandwich", violations == 0,
         std::to_string(points) + " ladder points, " + std::to_string(violations) + " violations");
}

void derivative_identity() {
  const ModelParams p{1.0, 1.0, 1e6};
  const auto atom = perturbation::atom_potential(0.0, 1.0);
  const auto d = perturbation::derivative_check(atom, p);
  double family = 0.0;
  for (double e : {-0.5, -0.1, 0.3, 1.0})
    family = std::max(family, std::abs(perturbation::e_eps(e, atom, p).energy - pekar_formula(1.0, 1.0 + e)));
  const double limit = std::abs(d.right_extrapolated + 0.625);
  const bool ok = d.order_right >= 0.9 && d.order_left >= 0.9 && family <= 1e-6 && limit <= 1e-6 && d.sandwich_ok;
  report(9, "derivative identity", ok,
         "orders " + f("%.3f", d.order_right) + "/" + f("%.3f", d.order_left) + ", limit error " + f("%.1e", limit) +
             ", closed-form family " + f("%.1e", family));
}

void density_convergence(const Ladders& l) {
  const ModelParams p{1.0, 1.0, 1e6};
  const auto atom = perturbation::atom_potential(0.0, 1.0);
  bool mono = true, l1_mono = true;
  double prev = -1e300, prev_l1 = 1e300, last = 0.0, last_l1 = 0.0;
  std::string series;
  for (const auto& pt : l.polaron) {
    const double d = perturbation::density_pairing_from(pt.B, atom, pt.minimizer);
    const double l1 = perturbation::density_l1_distance(pt.B, p, pt.minimizer);
    mono = mono && std::abs(d - 0.625) <= std::abs(prev - 0.625) + 1e-6;
    l1_mono = l1_mono && l1 <= prev_l1 + 1e-6;
    prev = d;
    prev_l1 = l1;
    last = d;
    last_l1 = l1;
    series += f("%.4f", d) + "/" + f("%.4f", l1) + " ";
  }
  report(10, "density convergence", mono && l1_mono && last_l1 <= 0.05,
         "pairing/L1 along ladder " + series + "(final pairing " + f("%.4f", last) + ")");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "polaron_acceptance";
  std::filesystem::create_directories(dir);
  std::ostringstream sink;
  auto run_with = [&](const char* threads, const std::string& base) {
    setenv("POLARON_THREADS", threads, 1);
    return cli::run({"ladder", "-o", (dir / base).string()}, sink, sink);
  };
  const int c1 = run_with("1", "t1");
  const int c2 = run_with("4", "t4");
  unsetenv("POLARON_THREADS");
  const bool same = slurp(dir / "t1.json") == slurp(dir / "t4.json") && slurp(dir / "t1.csv") == slurp(dir / "t4.csv");
  report(11, "determinism across thread counts", c1 == 0 && c2 == 0 && same,
         std::string("threads 1 vs 4: ") + (same ? "byte-identical" : "outputs differ"));
}

}  // namespace

int main() {
  closed_form_reproduction();
  euler_lagrange();
  delta_well();
  quartic_identity();
  potential_identities();
  extraction_sweep();
  const Ladders l = run_ladders();
  coefficient_recovery(l);
  sandwich(l);
  derivative_identity();
  density_convergence(l);
  determinism();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
