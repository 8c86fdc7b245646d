#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "usd/heterodyne.hpp"
#include "usd/physics.hpp"
#include "usd/receiver.hpp"

// Deterministic parallel Monte Carlo. Trials are grouped into batches; each
// trial's random stream is seeded from (master seed, batch, trial), so the
// estimate is bit-identical for any worker count. Error bars follow the
// batch convention: standard error = stddev of batch means / sqrt(batches).

namespace usd {

enum class Strategy { kStatic, kAdaptive, kHeterodyne };

std::string strategy_name(Strategy s);

struct RunPlan {
  std::uint64_t master_seed = 0;
  int n_trials = 24000;  // per batch
  int n_batches = 5;
  int workers = 1;  // 0 = hardware concurrency
  Strategy strategy = Strategy::kAdaptive;
  ChannelParams channel;
  ReceiverConfig receiver;
  HeterodyneModel heterodyne;

  void validate() const;
};

struct BatchStats {
  std::int64_t trials = 0;
  std::int64_t conclusive = 0;
  std::int64_t wrong = 0;
  std::array<std::int64_t, 4> conclusive_by_state = {0, 0, 0, 0};
  std::array<std::int64_t, 4> trials_by_state = {0, 0, 0, 0};
  bool no_conclusive = false;  // p_error recorded as 0 for lack of data

  double p_conclusive() const;
  double p_error() const;
};

struct PerformanceEstimate {
  double p_conclusive = 0.0;
  double p_conclusive_se = 0.0;
  double p_error = 0.0;
  double p_error_se = 0.0;
  // Analytic binomial standard errors over the pooled counts, reported next
  // to the batch-based bars.
  double p_conclusive_binom_se = 0.0;
  double p_error_binom_se = 0.0;
  std::int64_t total_trials = 0;
  std::vector<BatchStats> batches;
};

std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t batch_index,
                                std::uint64_t trial_index);

PerformanceEstimate estimate(const RunPlan& plan);

}  // namespace usd
