// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "polaron/cli/config.hpp"

namespace polaron::cli {

/// Full command-line entry point; args exclude the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ladder(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_perturb(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// %.17g with "inf", "-inf" and "nan" spelled out.
std::string csv_number(double v);

}  // namespace polaron::cli
