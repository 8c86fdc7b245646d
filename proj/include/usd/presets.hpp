#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "usd/config.hpp"
#include "usd/result_row.hpp"

// Canned experiments regenerating the library's reference performance
// curves as CSV data, plus the generic sweep runner behind `usdsim sweep`.

namespace usd {

struct RunOptions {
  std::uint64_t seed = 1;
  int trials = 24000;  // per batch, Monte Carlo methods only
  int batches = 5;
  int workers = 1;
};

std::vector<std::string> preset_names();

// Throws std::invalid_argument for an unknown preset name.
std::vector<ResultRow> run_preset(const std::string& name,
                                  const RunOptions& options);

std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

}  // namespace usd
