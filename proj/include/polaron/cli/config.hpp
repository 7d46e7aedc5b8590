// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polaron/core.hpp"
#include "polaron/perturbation.hpp"

namespace polaron::cli {

using json = nlohmann::ordered_json;

/// Bad or inconsistent run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNotConverged = 3 };

inline constexpr const char* kDefaultsVersion = "1";

struct SolveSection {
  bool delta_well = false;
  bool extrapolate = true;
  std::size_t max_iter = 20000;
  double tol_energy = 1e-13;
  double tol_grad = 1e-6;
  std::string seed = "gaussian";
};

struct PotentialSection {
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t samples = 201;
  std::vector<double> lengths{0.05, 0.1, 1.0};
};

struct LadderSection {
  std::string model = "polaron";
  std::vector<double> fields{1e6, 1e9, 1e12, 1e18, 1e24, 1e36};
  double width_factor = 40.0;
  std::size_t n = 4097;
};

struct PerturbSection {
  std::vector<perturbation::Atom> atoms{{0.0, 1.0}};
  std::optional<double> gaussian_width;
  double gaussian_height = 1.0;
  std::vector<double> eps{1e-2, 1e-3, 1e-4};
  std::vector<double> density_fields;
};

struct VerifySection {
  bool quick = false;
  std::string inject_fault;
};

struct RunConfig {
  std::string command;
  ModelParams params{};
  std::optional<double> half_width;
  std::optional<std::size_t> n;
  SolveSection solve;
  PotentialSection potential;
  LadderSection ladder;
  PerturbSection perturb;
  VerifySection verify;
  std::string output;           ///< base path; empty prints JSON to stdout
  std::string format = "both";  ///< csv | json | both

  /// Grid for solve / perturb: explicit values or half_width 40/((alpha+2beta)/4), n 8193.
  Grid1D grid() const;
  perturbation::PerturbPotential perturb_potential() const;

  /// The command-relevant part of the configuration.
  json to_json() const;
  /// Throws ConfigError on unknown keys or wrong types, naming the key.
  static RunConfig from_json(const json& doc);
  /// Throws ConfigError if values violate their ranges.
  void validate() const;
};

/// The versioned defaults table printed by --show-defaults.
json defaults_table();

}  // namespace polaron::cli
