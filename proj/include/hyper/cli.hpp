#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hyper/config.hpp"

namespace hyper {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitSearch = 3,
  kExitTolerance = 4,
};

/// Canned configuration of a named demo; throws ConfigError for unknown names.
ExperimentConfig demo_config(const std::string& name);

/// `%.6e`, shared by the CSV files and the stdout summary.
std::string format_metric(double x);

/// hyper_cli <demo NAME | witness | tour | approx | report> [--config P]
///           [--epsilon E] [--radius R] [--seed S] [--budget B] [--out DIR]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyper
