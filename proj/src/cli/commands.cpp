// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polaron/asymptotics.hpp"
#include "polaron/cli/verify.hpp"
#include "polaron/closedform.hpp"
#include "polaron/effpot.hpp"
#include "polaron/perturbation.hpp"
#include "polaron/solver.hpp"

namespace polaron::cli {

namespace {

constexpr const char* kSurrogateNote =
    "densities and energies are those of the classical lowest-Landau-level 1D functional, "
    "not of the quantum field ground state";

json split_json(const EnergySplit& e) {
  return {{"kinetic", e.kinetic}, {"quartic", e.quartic},         {"delta", e.delta},
          {"external", e.external}, {"convolution", e.convolution}, {"total", e.total}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("output: cannot open '" + path + "' for writing");
  f << content;
}

void emit(const RunConfig& cfg, json body, const std::string& csv, std::ostream& out) {
  json doc;
  doc["config"] = cfg.to_json();
  for (auto& [k, v] : body.items()) doc[k] = v;
  const std::string text = doc.dump(2) + "\n";
  const bool want_json = cfg.format != "csv";
  const bool want_csv = cfg.format != "json" && !csv.empty();
  if (cfg.output.empty()) {
    if (want_json) out << text;
    if (cfg.format == "csv") out << csv;
    return;
  }
  if (want_json) write_file(cfg.output + ".json", text);
  if (want_csv) write_file(cfg.output + ".csv", csv);
}

solver::SeedProfile seed_profile(const std::string& s) {
  if (s == "sech") return solver::SeedProfile::kSech;
  if (s == "exponential") return solver::SeedProfile::kExponential;
  return solver::SeedProfile::kGaussian;
}

}  // namespace

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto& p = cfg.params;
  if (p.alpha == 0.0 && !cfg.solve.delta_well)
    throw ConfigError("solve: alpha = 0 is the pure delta-well problem; pass --delta-well to run it");
  const Grid1D grid = cfg.grid();
  solver::SolveOptions opts;
  opts.max_iter = cfg.solve.max_iter;
  opts.tol_energy = cfg.solve.tol_energy;
  opts.tol_grad = cfg.solve.tol_grad;
  opts.seed = seed_profile(cfg.solve.seed);
  auto build = [&](const Grid1D& g) { return pekar_spec(g, p.alpha, p.beta); };

  solver::SolveReport rep;
  json body;
  const bool extrapolate = cfg.solve.extrapolate && grid.size() % 4 == 1;
  if (extrapolate) {
    auto ext = solver::minimize_extrapolated(build, grid, opts);
    rep = std::move(ext.fine);
    rep.converged = ext.converged;
    body["extrapolated_energy"] = ext.energy;
  } else {
    rep = solver::minimize(build(grid), opts);
  }
  body["energy"] = split_json(rep.energy);
  body["iterations"] = rep.iterations;
  body["converged"] = rep.converged;
  body["lambda"] = rep.lambda;
  body["grad_residual"] = rep.grad_residual;

  const GridFn ref = closedform::sample_minimizer(grid, p.alpha, p.beta);
  const double e_ref = closedform::pekar_energy_closed(p.alpha, p.beta);
  const double e_best = extrapolate ? body["extrapolated_energy"].get<double>() : rep.energy.total;
  body["reference"] = {{"energy", e_ref},
                       {"relative_error", std::abs(e_best - e_ref) / std::abs(e_ref)},
                       {"l2_distance", l2_norm(rep.minimizer - ref)},
                       {"h1_distance", solver::h1_distance(rep.minimizer, ref)}};
  if (p.alpha == 0.0) body["reference"]["path"] = "delta-well";

  std::string csv = "x,psi,phi0\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv += csv_number(grid.x(i)) + "," + csv_number(rep.minimizer[i]) + "," + csv_number(ref[i]) + "\n";
  emit(cfg, std::move(body), csv, out);
  return rep.converged ? kOk : kNotConverged;
}

int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double B = cfg.params.field;
  const auto& ps = cfg.potential;
  std::string csv = "x,v_upper,v_lower,inv_abs_x\n";
  const double dx = (ps.x_max - ps.x_min) / static_cast<double>(ps.samples - 1);
  for (std::size_t i = 0; i < ps.samples; ++i) {
    const double x = (i + 1 == ps.samples) ? ps.x_max : ps.x_min + static_cast<double>(i) * dx;
    csv += csv_number(x) + "," + csv_number(effpot::v_upper(B, x)) + "," + csv_number(effpot::v_lower(B, x)) + "," +
           csv_number(1.0 / std::abs(x)) + "\n";
  }
  json consts = json::array();
  if (B > std::exp(1.0)) {
    csv += "# L,G,D,identity_residual_upper,identity_residual_lower\n";
    const double m = effpot::mu(B);
    for (double L : ps.lengths) {
      const double G = effpot::g_const(B, L);
      const double D = effpot::d_const(B, L);
      const double ru = std::abs(effpot::integral_v_upper_by_x(B, L) - (m + G));
      const double rl = std::abs(effpot::integral_v_lower_by_x(B, L) - (m + D));
      csv += "# " + csv_number(L) + "," + csv_number(G) + "," + csv_number(D) + "," + csv_number(ru) + "," +
             csv_number(rl) + "\n";
      consts.push_back({{"L", L}, {"G", G}, {"D", D}, {"identity_residual_upper", ru},
                        {"identity_residual_lower", rl}});
    }
  } else {
    csv += "# G and D are defined for B > e only\n";
  }
  json body;
  body["field"] = B;
  body["rows"] = ps.samples;
  body["constants"] = consts;
  emit(cfg, std::move(body), csv, out);
  return kOk;
}

int cmd_ladder(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  asymptotics::LadderSpec spec;
  spec.fields = cfg.ladder.fields;
  spec.model = cfg.ladder.model == "hydrogenic" ? asymptotics::Model::kHydrogenic : asymptotics::Model::kPolaron;
  spec.params = cfg.params;
  spec.grid_policy = {cfg.ladder.width_factor, cfg.ladder.n};
  const auto pts = asymptotics::ladder_energies(spec);

  std::string csv = "B,ln_B,mu,e_eff,e_eff_over_mu2,trial_bound,bracket,status\n";
  std::vector<asymptotics::FitPoint> fit_pts;
  json failures = json::array();
  for (const auto& pt : pts) {
    csv += csv_number(pt.B) + "," + csv_number(pt.log_b) + "," + csv_number(pt.mu) + "," + csv_number(pt.e_eff) +
           "," + csv_number(pt.e_eff / (pt.mu * pt.mu)) + "," + csv_number(pt.trial) + "," +
           csv_number(pt.bracket) + "," + (pt.ok ? "ok" : "failed") + "\n";
    if (pt.ok)
      fit_pts.push_back({pt.B, pt.e_eff});
    else
      failures.push_back({{"B", pt.B}, {"error", pt.error}});
  }

  const bool polaron = spec.model == asymptotics::Model::kPolaron;
  const double b2 = cfg.params.beta * cfg.params.beta;
  const double e0 = polaron ? closedform::pekar_energy_closed(cfg.params.alpha, cfg.params.beta) : -0.25 * b2;
  json body;
  body["note"] = kSurrogateNote;
  body["points_ok"] = fit_pts.size();
  body["failures"] = failures;
  int code = kOk;
  if (fit_pts.size() >= 4) {
    const auto fit = asymptotics::fit_expansion(fit_pts);
    const double b_target = polaron ? -4.0 * e0 : b2;
    body["fit"] = {{"a", fit.a}, {"b", fit.b}, {"c", fit.c}, {"residual", fit.residual}};
    body["targets"] = {{"a", e0}, {"b", b_target}, {"b_is_conjectural", polaron}};
    body["deviations"] = {{"a_relative", (fit.a - e0) / std::abs(e0)},
                          {"b_relative", (fit.b - b_target) / std::abs(b_target)}};
  } else {
    code = kNotConverged;
  }
  emit(cfg, std::move(body), csv, out);
  return code;
}

int cmd_perturb(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto W = cfg.perturb_potential();
  const auto& p = cfg.params;
  const auto d = perturbation::derivative_check(W, p, cfg.perturb.eps, cfg.grid(), {});
  json body;
  body["target"] = d.target;
  body["e0"] = d.e0;
  body["right"] = d.right;
  body["left"] = d.left;
  body["two_sided"] = d.two_sided;
  body["order_right"] = d.order_right;
  body["order_left"] = d.order_left;
  body["right_extrapolated"] = d.right_extrapolated;
  body["left_extrapolated"] = d.left_extrapolated;
  body["sandwich_ok"] = d.sandwich_ok;

  const bool single_origin_atom = !W.bounded && W.atoms.size() == 1 && W.atoms[0].location == 0.0;
  if (single_origin_atom) {
    const double w = W.atoms[0].weight;
    json closed = json::array();
    for (double e : d.eps)
      closed.push_back((closedform::pekar_energy_closed(p.alpha, p.beta + e * w) -
                        closedform::pekar_energy_closed(p.alpha, p.beta)) / e);
    body["closed_form_right"] = closed;
  }
  if (!cfg.perturb.density_fields.empty()) {
    json dens = json::array();
    const double limit = -perturbation::derivative_target(W, p);
    for (double B : cfg.perturb.density_fields) {
      const asymptotics::GridPolicy policy;
      const Grid1D grid = policy.grid_for(B);
      const auto rep = solver::minimize(asymptotics::classical_1d_spec(B, p, grid),
                                        asymptotics::ladder_solve_options(B, p));
      dens.push_back({{"B", B},
                      {"pairing", perturbation::density_pairing_from(B, W, rep.minimizer)},
                      {"limit", limit},
                      {"l1_distance", perturbation::density_l1_distance(B, p, rep.minimizer)},
                      {"converged", rep.converged}});
    }
    body["density"] = dens;
    body["note"] = kSurrogateNote;
  }

  std::string csv = "eps,right,left,two_sided\n";
  for (std::size_t k = 0; k < d.eps.size(); ++k)
    csv += csv_number(d.eps[k]) + "," + csv_number(d.right[k]) + "," + csv_number(d.left[k]) + "," +
           csv_number(d.two_sided[k]) + "\n";
  emit(cfg, std::move(body), csv, out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto checks = run_checks(cfg.verify.quick, cfg.verify.inject_fault);
  json list = json::array();
  std::string first_fail;
  std::size_t passed = 0;
  std::string csv = "name,passed,value,threshold\n";
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                    {"threshold", c.threshold}, {"detail", c.detail}});
    csv += c.name + "," + (c.passed ? "1" : "0") + "," + csv_number(c.value) + "," + csv_number(c.threshold) + "\n";
    if (c.passed)
      ++passed;
    else if (first_fail.empty())
      first_fail = c.name;
  }
  json body;
  body["total"] = checks.size();
  body["passed"] = passed;
  body["first_failure"] = first_fail.empty() ? json(nullptr) : json(first_fail);
  body["checks"] = list;
  emit(cfg, std::move(body), csv, out);
  if (!first_fail.empty()) {
    err << "verify: check failed: " << first_fail << "\n";
    return kVerifyFailed;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational numerics for strong-field polaron and hydrogen models"};
  app.name("polaron");
  app.require_subcommand(0, 1);

  bool show_defaults = false;
  std::string config_path, output, format;
  double alpha = 0, beta = 0, field = 0, half_width = 0;
  std::size_t n = 0;
  app.add_flag("--show-defaults", show_defaults, "Print the versioned defaults table and exit");
  app.add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("-o,--output", output, "Output base path (writes <base>.json and <base>.csv)");
  app.add_option("--format", format, "csv, json or both");
  app.add_option("--alpha", alpha, "Phonon coupling alpha >= 0");
  app.add_option("--beta", beta, "Coulomb strength beta > 0");
  app.add_option("--field", field, "Magnetic field B > 1");
  app.add_option("--half-width", half_width, "Grid half width");
  app.add_option("--n", n, "Grid node count (odd)");

  SolveSection solve_flags;
  bool no_extrapolate = false;
  auto* solve = app.add_subcommand("solve", "Minimize the 1D Pekar functional with a delta well");
  solve->add_flag("--delta-well", solve_flags.delta_well, "Allow alpha = 0 (pure delta well)");
  solve->add_flag("--no-extrapolate", no_extrapolate, "Skip the two-grid energy extrapolation");
  solve->add_option("--max-iter", solve_flags.max_iter);
  solve->add_option("--tol-energy", solve_flags.tol_energy);
  solve->add_option("--tol-grad", solve_flags.tol_grad);
  solve->add_option("--seed", solve_flags.seed, "gaussian, sech or exponential");

  PotentialSection pot_flags;
  auto* potential = app.add_subcommand("potential", "Tabulate the effective Coulomb potentials");
  potential->add_option("--x-min", pot_flags.x_min, "Left end of the table");
  potential->add_option("--x-max", pot_flags.x_max, "Right end of the table");
  potential->add_option("--samples", pot_flags.samples, "Number of rows");
  potential->add_option("--L", pot_flags.lengths, "Lengths for the G and D footer");

  LadderSection ladder_flags;
  auto* ladder = app.add_subcommand("ladder", "Strong-field ladder and expansion fit");
  ladder->add_option("--model", ladder_flags.model, "polaron or hydrogenic");
  ladder->add_option("--fields", ladder_flags.fields, "Field values B");
  ladder->add_option("--width-factor", ladder_flags.width_factor, "half_width = factor / mu(B)");
  ladder->add_option("--ladder-n", ladder_flags.n, "Nodes per ladder grid");

  std::vector<double> atom_values;
  double gauss_width = 1.0, gauss_height = 1.0;
  std::vector<double> eps, density_fields;
  auto* perturb = app.add_subcommand("perturb", "Derivative of the perturbed energy and density pairing");
  perturb->add_option("--atom", atom_values, "LOCATION WEIGHT (repeatable)")->expected(2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  perturb->add_option("--gaussian-width", gauss_width, "Add exp(-x^2/width^2) to W");
  perturb->add_option("--gaussian-height", gauss_height, "Amplitude of the Gaussian part");
  perturb->add_option("--eps", eps, "Perturbation strengths");
  perturb->add_option("--density-fields", density_fields, "Fields for the density pairing");

  bool quick = false;
  std::string fault;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_flag("--quick", quick, "Fast subset only");
  verify->add_option("--inject-fault", fault)->group("");

  for (auto* sub : {solve, potential, ladder, perturb, verify}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "polaron: " << e.what() << "\n";
    return kConfigError;
  }

  if (show_defaults) {
    out << defaults_table().dump(2) << "\n";
    return kOk;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      json doc;
      try {
        doc = json::parse(ss.str());
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
      }
      cfg = RunConfig::from_json(doc);
    }
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      const std::string name = subs.front()->get_name();
      if (!cfg.command.empty() && cfg.command != name)
        throw ConfigError("config: command '" + cfg.command + "' conflicts with subcommand '" + name + "'");
      cfg.command = name;
    }
    if (cfg.command.empty()) {
      err << app.help();
      return kConfigError;
    }

    if (app.count("--output")) cfg.output = output;
    if (app.count("--format")) cfg.format = format;
    if (app.count("--alpha")) cfg.params.alpha = alpha;
    if (app.count("--beta")) cfg.params.beta = beta;
    if (app.count("--field")) cfg.params.field = field;
    if (app.count("--half-width")) cfg.half_width = half_width;
    if (app.count("--n")) cfg.n = n;

    if (solve->count("--delta-well")) cfg.solve.delta_well = solve_flags.delta_well;
    if (solve->count("--no-extrapolate")) cfg.solve.extrapolate = !no_extrapolate;
    if (solve->count("--max-iter")) cfg.solve.max_iter = solve_flags.max_iter;
    if (solve->count("--tol-energy")) cfg.solve.tol_energy = solve_flags.tol_energy;
    if (solve->count("--tol-grad")) cfg.solve.tol_grad = solve_flags.tol_grad;
    if (solve->count("--seed")) cfg.solve.seed = solve_flags.seed;

    if (potential->count("--x-min")) cfg.potential.x_min = pot_flags.x_min;
    if (potential->count("--x-max")) cfg.potential.x_max = pot_flags.x_max;
    if (potential->count("--samples")) cfg.potential.samples = pot_flags.samples;
    if (potential->count("--L")) cfg.potential.lengths = pot_flags.lengths;

    if (ladder->count("--model")) cfg.ladder.model = ladder_flags.model;
    if (ladder->count("--fields")) cfg.ladder.fields = ladder_flags.fields;
    if (ladder->count("--width-factor")) cfg.ladder.width_factor = ladder_flags.width_factor;
    if (ladder->count("--ladder-n")) cfg.ladder.n = ladder_flags.n;

    if (perturb->count("--atom")) {
      cfg.perturb.atoms.clear();
      for (std::size_t k = 0; k + 1 < atom_values.size(); k += 2)
        cfg.perturb.atoms.push_back({atom_values[k], atom_values[k + 1]});
    }
    if (perturb->count("--gaussian-width")) cfg.perturb.gaussian_width = gauss_width;
    if (perturb->count("--gaussian-height")) cfg.perturb.gaussian_height = gauss_height;
    if (perturb->count("--eps")) cfg.perturb.eps = eps;
    if (perturb->count("--density-fields")) cfg.perturb.density_fields = density_fields;

    if (verify->count("--quick")) cfg.verify.quick = quick;
    if (verify->count("--inject-fault")) cfg.verify.inject_fault = fault;

    cfg.validate();
    if (cfg.command == "solve") return cmd_solve(cfg, out, err);
    if (cfg.command == "potential") return cmd_potential(cfg, out, err);
    if (cfg.command == "ladder") return cmd_ladder(cfg, out, err);
    if (cfg.command == "perturb") return cmd_perturb(cfg, out, err);
    return cmd_verify(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "polaron: " << e.what() << "\n";
    return kConfigError;
  } catch (const solver::SolverError& e) {
    err << "polaron: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::invalid_argument& e) {
    err << "polaron: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "polaron: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace polaron::cli
