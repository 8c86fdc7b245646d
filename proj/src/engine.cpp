#include "usd/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace usd {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kStatic:
      return "static";
    case Strategy::kAdaptive:
      return "adaptive";
    case Strategy::kHeterodyne:
      return "heterodyne";
  }
  throw std::invalid_argument("unknown strategy");
}

void RunPlan::validate() const {
  if (n_trials < 1) {
    throw std::invalid_argument("n_trials must be >= 1");
  }
  if (n_batches < 2) {
    throw std::invalid_argument("n_batches must be >= 2 for error bars");
  }
  if (workers < 0) {
    throw std::invalid_argument("workers must be >= 0");
  }
  channel.validate();
  if (strategy == Strategy::kHeterodyne) {
    heterodyne.validate();
  } else {
    receiver.validate();
  }
}

double BatchStats::p_conclusive() const {
  return trials > 0 ? static_cast<double>(conclusive) / trials : 0.0;
}

double BatchStats::p_error() const {
  return conclusive > 0 ? static_cast<double>(wrong) / conclusive : 0.0;
}

namespace {

int draw_true_state(const ChannelParams& channel, RandomStream& rng) {
  double u = rng.uniform();
  double cum = 0.0;
  for (int m = 0; m < 3; ++m) {
    cum += channel.priors[m];
    if (u < cum) {
      return m;
    }
  }
  return 3;
}

struct TrialResult {
  int true_state;
  bool conclusive;
  bool wrong;
};

TrialResult run_one(const RunPlan& plan, const ReceiverConfig& receiver,
                    std::uint64_t seed) {
  RandomStream rng(seed);
  int m = draw_true_state(plan.channel, rng);
  if (plan.strategy == Strategy::kHeterodyne) {
    auto [x, p] = sample_outcome(m, plan.channel.alpha_sq, plan.heterodyne.eta,
                                 rng);
    double t = plan.heterodyne.threshold;
    bool conclusive = !(std::abs(x) < t && std::abs(p) < t);
    if (!conclusive) {
      return {m, false, false};
    }
    // Quadrant decision: state whose sign pair matches the outcome.
    int k = x >= 0 ? (p >= 0 ? 0 : 3) : (p >= 0 ? 1 : 2);
    return {m, true, k != m};
  }
  TrialRecord record = run_trial(m, plan.channel, receiver, rng);
  Decision d = decide(record);
  return {m, d.conclusive, d.conclusive && d.state != m};
}

BatchStats run_batch(const RunPlan& plan, const ReceiverConfig& receiver,
                     int batch, int workers) {
  BatchStats stats;
  stats.trials = plan.n_trials;

  auto worker_span = [&](int first, int last, BatchStats& local) {
    for (int t = first; t < last; ++t) {
      std::uint64_t seed = derive_trial_seed(plan.master_seed,
                                             static_cast<std::uint64_t>(batch),
                                             static_cast<std::uint64_t>(t));
      TrialResult r = run_one(plan, receiver, seed);
      ++local.trials_by_state[r.true_state];
      if (r.conclusive) {
        ++local.conclusive;
        ++local.conclusive_by_state[r.true_state];
        if (r.wrong) {
          ++local.wrong;
        }
      }
    }
  };

  if (workers <= 1) {
    BatchStats local;
    worker_span(0, plan.n_trials, local);
    stats.conclusive = local.conclusive;
    stats.wrong = local.wrong;
    stats.conclusive_by_state = local.conclusive_by_state;
    stats.trials_by_state = local.trials_by_state;
  } else {
    std::vector<BatchStats> locals(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    int chunk = (plan.n_trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int first = w * chunk;
      int last = std::min(plan.n_trials, first + chunk);
      if (first >= last) {
        break;
      }
      threads.emplace_back(worker_span, first, last, std::ref(locals[w]));
    }
    for (auto& th : threads) {
      th.join();
    }
    // Integer counters commute, so the reduction order cannot matter.
    for (const auto& local : locals) {
      stats.conclusive += local.conclusive;
      stats.wrong += local.wrong;
      for (int m = 0; m < 4; ++m) {
        stats.conclusive_by_state[m] += local.conclusive_by_state[m];
        stats.trials_by_state[m] += local.trials_by_state[m];
      }
    }
  }
  stats.no_conclusive = stats.conclusive == 0;
  return stats;
}

}  // namespace

PerformanceEstimate estimate(const RunPlan& plan) {
  plan.validate();
  int workers = plan.workers == 0
                    ? static_cast<int>(std::thread::hardware_concurrency())
                    : plan.workers;
  if (workers < 1) {
    workers = 1;
  }

  ReceiverConfig receiver = plan.receiver;
  if (plan.strategy == Strategy::kStatic) {
    receiver.stages = 4;
  }

  PerformanceEstimate est;
  est.batches.reserve(plan.n_batches);
  for (int b = 0; b < plan.n_batches; ++b) {
    est.batches.push_back(run_batch(plan, receiver, b, workers));
  }

  double pc_sum = 0.0;
  double pe_sum = 0.0;
  std::int64_t conclusive = 0;
  std::int64_t wrong = 0;
  for (const auto& batch : est.batches) {
    pc_sum += batch.p_conclusive();
    pe_sum += batch.p_error();
    conclusive += batch.conclusive;
    wrong += batch.wrong;
    est.total_trials += batch.trials;
  }
  int nb = plan.n_batches;
  est.p_conclusive = pc_sum / nb;
  est.p_error = pe_sum / nb;

  double pc_var = 0.0;
  double pe_var = 0.0;
  for (const auto& batch : est.batches) {
    pc_var += std::pow(batch.p_conclusive() - est.p_conclusive, 2);
    pe_var += std::pow(batch.p_error() - est.p_error, 2);
  }
  pc_var /= nb - 1;
  pe_var /= nb - 1;
  est.p_conclusive_se = std::sqrt(pc_var / nb);
  est.p_error_se = std::sqrt(pe_var / nb);

  double pc_pool = static_cast<double>(conclusive) / est.total_trials;
  est.p_conclusive_binom_se =
      std::sqrt(pc_pool * (1.0 - pc_pool) / est.total_trials);
  if (conclusive > 0) {
    double pe_pool = static_cast<double>(wrong) / conclusive;
    est.p_error_binom_se = std::sqrt(pe_pool * (1.0 - pe_pool) / conclusive);
  }
  return est;
}

}  // namespace usd
