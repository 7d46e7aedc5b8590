// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace polaron::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Runs the invariant suite. `quick` keeps only the fast subset. `fault`
/// ("delta-sign") corrupts the delta term of the suite's own functionals so
/// that harnesses can confirm the suite detects it.
std::vector<CheckResult> run_checks(bool quick, const std::string& fault = {});

}  // namespace polaron::cli
