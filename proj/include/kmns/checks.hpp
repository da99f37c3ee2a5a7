#pragma once

// Orchestration: run named residual checks against a loaded scenario over a
// deterministic quasi-random sample, producing one report per check and
// generator.  Everything here is deterministic given the configuration.

#include <map>
#include <string>
#include <vector>

#include "kmns/report.hpp"
#include "kmns/scenario.hpp"

namespace kmns {

struct KomarOptions {
  std::vector<double> radii = {50.0, 100.0, 200.0};
  int n_theta = 32;
  int n_phi = 64;
};

struct RunConfig {
  // scenario selection: either a built-in name (+ params) or a user file
  std::string scenario_name;
  Params params;
  std::string scenario_file;  // when nonempty, wins over scenario_name

  // generator selection; empty means every declared symmetry generator
  // applicable to each check (explicit names may select non-symmetry probes)
  std::vector<std::string> killing;

  // check tokens to run, in order; must be nonempty and known
  std::vector<std::string> checks;

  int count = 100;    // sample points per check
  unsigned seed = 0;  // quasi-random sequence offset

  // overrides keyed like the defaults ("killing", "maxwell.dF", ...)
  std::map<std::string, double> tolerances;

  KomarOptions komar;
};

const std::vector<std::string>& known_check_tokens();
const std::map<std::string, double>& default_tolerances();

struct RunResult {
  std::vector<ResidualReport> reports;
  bool all_pass = true;
};

// throws config_error on invalid configuration (unknown token/generator/
// tolerance key, missing chart or declared data for a requested check, bad
// quadrature) and propagates scenario-load failures
RunResult run_checks(const RunConfig& config);

}  // namespace kmns
