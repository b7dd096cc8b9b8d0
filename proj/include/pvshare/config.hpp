#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pvshare/objective.hpp"
#include "pvshare/optim.hpp"

namespace pvshare {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One full run: scenario, which searches to execute, and their knobs.
struct RunConfig {
  std::string scenario = "3a";
  std::string optimizer = "all";  // exhaustive | gd | sa | all
  std::uint64_t seed = 1;
  int num_seeds = 1;              // gd/sa restarts; reported per seed
  int days = 30;
  std::string profiles_csv;       // empty: generate from `seed`
  std::string out_dir = "out";
  ObjectiveWeights weights;
  SaConfig sa;                    // sa.seed is overridden by `seed`
  ExhaustiveOptions exhaustive;
};

// Flat key = value file with [weights], [sa] and [exhaustive] sections;
// '#' starts a comment. Unknown keys or unparsable values raise ConfigError.
RunConfig load_config_file(const std::string& path);

// Shared by the file parser and the CLI flag handling.
void validate_run_config(const RunConfig& cfg);

}  // namespace pvshare
