// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/cli/config.hpp"

#include <algorithm>
#include <cmath>

#include "polaron/parallel.hpp"
#include "polaron/solver.hpp"

namespace polaron::cli {

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError("config: unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  const std::string name = where.empty() ? key : where + "." + key;
  try {
    const auto& v = obj.at(key);
    if constexpr (std::is_same_v<T, std::size_t>) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("config: key '" + name + "' must be a nonnegative integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("config: key '" + name + "' must be a number");
    }
    dst = v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: key '" + name + "' has the wrong type");
  }
}

template <class T>
void read_opt(const json& obj, const char* key, std::optional<T>& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  T v{};
  read(obj, key, v, where);
  dst = v;
}

bool is_grid_command(const std::string& c) { return c == "solve" || c == "perturb"; }

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("config: " + message);
}

}  // namespace

Grid1D RunConfig::grid() const {
  const double s = params.alpha + 2.0 * params.beta;
  const double hw = half_width.value_or(40.0 / (s / 4.0));
  return make_grid(hw, n.value_or(8193));
}

perturbation::PerturbPotential RunConfig::perturb_potential() const {
  perturbation::PerturbPotential w;
  if (perturb.gaussian_width) w = perturbation::gaussian_potential(*perturb.gaussian_width, perturb.gaussian_height);
  w.atoms = perturb.atoms;
  return w;
}

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["params"] = {{"alpha", params.alpha}, {"beta", params.beta}, {"field", params.field}};
  if (is_grid_command(command)) {
    const Grid1D g = grid();
    j["grid"] = {{"half_width", g.half_width()}, {"n", g.size()}};
  }
  if (command == "solve") {
    j["solve"] = {{"delta_well", solve.delta_well}, {"extrapolate", solve.extrapolate},
                  {"max_iter", solve.max_iter},     {"tol_energy", solve.tol_energy},
                  {"tol_grad", solve.tol_grad},     {"seed", solve.seed}};
  } else if (command == "potential") {
    j["potential"] = {{"x_min", potential.x_min},
                      {"x_max", potential.x_max},
                      {"samples", potential.samples},
                      {"lengths", potential.lengths}};
  } else if (command == "ladder") {
    j["ladder"] = {{"model", ladder.model},
                   {"fields", ladder.fields},
                   {"width_factor", ladder.width_factor},
                   {"n", ladder.n}};
  } else if (command == "perturb") {
    json atoms = json::array();
    for (const auto& a : perturb.atoms) atoms.push_back({{"location", a.location}, {"weight", a.weight}});
    json p = {{"atoms", atoms}, {"eps", perturb.eps}, {"density_fields", perturb.density_fields}};
    if (perturb.gaussian_width)
      p["gaussian"] = {{"width", *perturb.gaussian_width}, {"height", perturb.gaussian_height}};
    j["perturb"] = p;
  } else if (command == "verify") {
    j["verify"] = {{"quick", verify.quick}};
  }
  j["output"] = {{"format", format}};
  return j;
}

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig c;
  reject_unknown(doc, {"command", "params", "grid", "solve", "potential", "ladder", "perturb", "verify", "output"}, "");
  read(doc, "command", c.command, "");
  if (doc.contains("params")) {
    const auto& p = doc["params"];
    reject_unknown(p, {"alpha", "beta", "field"}, "params");
    read(p, "alpha", c.params.alpha, "params");
    read(p, "beta", c.params.beta, "params");
    read(p, "field", c.params.field, "params");
  }
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    reject_unknown(g, {"half_width", "n"}, "grid");
    read_opt(g, "half_width", c.half_width, "grid");
    read_opt(g, "n", c.n, "grid");
  }
  if (doc.contains("solve")) {
    const auto& s = doc["solve"];
    reject_unknown(s, {"delta_well", "extrapolate", "max_iter", "tol_energy", "tol_grad", "seed"}, "solve");
    read(s, "delta_well", c.solve.delta_well, "solve");
    read(s, "extrapolate", c.solve.extrapolate, "solve");
    read(s, "max_iter", c.solve.max_iter, "solve");
    read(s, "tol_energy", c.solve.tol_energy, "solve");
    read(s, "tol_grad", c.solve.tol_grad, "solve");
    read(s, "seed", c.solve.seed, "solve");
  }
  if (doc.contains("potential")) {
    const auto& s = doc["potential"];
    reject_unknown(s, {"x_min", "x_max", "samples", "lengths"}, "potential");
    read(s, "x_min", c.potential.x_min, "potential");
    read(s, "x_max", c.potential.x_max, "potential");
    read(s, "samples", c.potential.samples, "potential");
    read(s, "lengths", c.potential.lengths, "potential");
  }
  if (doc.contains("ladder")) {
    const auto& s = doc["ladder"];
    reject_unknown(s, {"model", "fields", "width_factor", "n"}, "ladder");
    read(s, "model", c.ladder.model, "ladder");
    read(s, "fields", c.ladder.fields, "ladder");
    read(s, "width_factor", c.ladder.width_factor, "ladder");
    read(s, "n", c.ladder.n, "ladder");
  }
  if (doc.contains("perturb")) {
    const auto& s = doc["perturb"];
    reject_unknown(s, {"atoms", "gaussian", "eps", "density_fields"}, "perturb");
    if (s.contains("atoms")) {
      if (!s["atoms"].is_array()) throw ConfigError("config: key 'perturb.atoms' must be an array");
      c.perturb.atoms.clear();
      for (const auto& a : s["atoms"]) {
        reject_unknown(a, {"location", "weight"}, "perturb.atoms[]");
        perturbation::Atom atom;
        read(a, "location", atom.location, "perturb.atoms[]");
        read(a, "weight", atom.weight, "perturb.atoms[]");
        c.perturb.atoms.push_back(atom);
      }
    }
    if (s.contains("gaussian")) {
      const auto& g = s["gaussian"];
      reject_unknown(g, {"width", "height"}, "perturb.gaussian");
      double w = 1.0;
      read(g, "width", w, "perturb.gaussian");
      read(g, "height", c.perturb.gaussian_height, "perturb.gaussian");
      c.perturb.gaussian_width = w;
    }
    read(s, "eps", c.perturb.eps, "perturb");
    read(s, "density_fields", c.perturb.density_fields, "perturb");
  }
  if (doc.contains("verify")) {
    const auto& s = doc["verify"];
    reject_unknown(s, {"quick"}, "verify");
    read(s, "quick", c.verify.quick, "verify");
  }
  if (doc.contains("output")) {
    const auto& s = doc["output"];
    reject_unknown(s, {"path", "format"}, "output");
    read(s, "path", c.output, "output");
    read(s, "format", c.format, "output");
  }
  return c;
}

void RunConfig::validate() const {
  require(command == "solve" || command == "potential" || command == "ladder" || command == "perturb" ||
              command == "verify",
          "unknown command '" + command + "'");
  require(format == "csv" || format == "json" || format == "both", "output.format must be csv, json or both");
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (is_grid_command(command)) {
    try {
      (void)grid();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: grid: ") + e.what());
    }
  }
  if (command == "solve") {
    require(solve.max_iter >= 1, "solve.max_iter must be >= 1");
    require(solve.tol_energy > 0.0 && solve.tol_grad > 0.0, "solve tolerances must be > 0");
    require(solve.seed == "gaussian" || solve.seed == "sech" || solve.seed == "exponential",
            "solve.seed must be gaussian, sech or exponential");
  } else if (command == "potential") {
    require(std::isfinite(potential.x_min) && std::isfinite(potential.x_max) && potential.x_min < potential.x_max,
            "potential range needs x_min < x_max");
    require(potential.samples >= 2, "potential.samples must be >= 2");
    for (double L : potential.lengths) require(L > 0.0 && std::isfinite(L), "potential.lengths must be > 0");
  } else if (command == "ladder") {
    require(ladder.model == "polaron" || ladder.model == "hydrogenic", "ladder.model must be polaron or hydrogenic");
    require(ladder.fields.size() >= 4, "ladder needs at least 4 fields for the fit");
    const double min_field = std::exp(std::exp(1.0));
    for (std::size_t i = 0; i < ladder.fields.size(); ++i) {
      require(ladder.fields[i] > min_field && std::isfinite(ladder.fields[i]), "ladder.fields must exceed e^e");
      if (i > 0) require(ladder.fields[i] > ladder.fields[i - 1], "ladder.fields must be strictly increasing");
    }
    require(ladder.width_factor > 0.0, "ladder.width_factor must be > 0");
    require(ladder.n >= 5 && ladder.n % 2 == 1, "ladder.n must be odd and >= 5");
    if (ladder.model == "polaron") require(params.alpha > 0.0, "polaron ladder needs alpha > 0");
  } else if (command == "perturb") {
    require(params.alpha > 0.0, "perturb needs alpha > 0");
    require(perturb.eps.size() >= 2, "perturb.eps needs at least 2 values");
    for (double e : perturb.eps) require(e > 0.0 && std::isfinite(e), "perturb.eps values must be > 0");
    const double min_field = std::exp(std::exp(1.0));
    for (double B : perturb.density_fields) require(B > min_field, "perturb.density_fields must exceed e^e");
    if (perturb.gaussian_width) require(*perturb.gaussian_width > 0.0, "perturb.gaussian.width must be > 0");
  }
}

json defaults_table() {
  const solver::SolveOptions so;
  const RunConfig rc;
  json t;
  t["version"] = kDefaultsVersion;
  t["params"] = {{"alpha", rc.params.alpha}, {"beta", rc.params.beta}, {"field", rc.params.field}};
  t["grid"] = {{"half_width", "40 / ((alpha + 2 beta) / 4)"}, {"n", 8193}};
  t["solver"] = {{"max_iter", so.max_iter},       {"tol_energy", so.tol_energy},
                 {"tol_grad", so.tol_grad},       {"step_init", so.step_init},
                 {"step_shrink", so.step_shrink}, {"step_grow", so.step_grow},
                 {"seed", "gaussian"},            {"seed_width", "2 / (alpha + 2 beta)"},
                 {"recenter_every", so.recenter_every}, {"extrapolate", rc.solve.extrapolate}};
  t["ladder"] = {{"model", rc.ladder.model},
                 {"fields", rc.ladder.fields},
                 {"half_width", "width_factor / mu(B)"},
                 {"width_factor", rc.ladder.width_factor},
                 {"n", rc.ladder.n}};
  t["potential"] = {{"x_min", rc.potential.x_min},
                    {"x_max", rc.potential.x_max},
                    {"samples", rc.potential.samples},
                    {"lengths", rc.potential.lengths}};
  t["perturb"] = {{"atoms", json::array({{{"location", 0.0}, {"weight", 1.0}}})}, {"eps", rc.perturb.eps}};
  t["threads_env"] = kThreadsEnv;
  return t;
}

}  // namespace polaron::cli
