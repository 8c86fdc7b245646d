#include "usd/receiver.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace usd {

void ReceiverConfig::validate() const {
  if (stages < 4) {
    throw std::invalid_argument("stages must be >= 4");
  }
  if (static_prefix < 1 || static_prefix > stages) {
    throw std::invalid_argument("static_prefix must lie in [1, stages]");
  }
  std::array<bool, 4> seen = {false, false, false, false};
  for (int s : cycle) {
    if (s < 0 || s > 3 || seen[s]) {
      throw std::invalid_argument("cycle must be a permutation of {0,1,2,3}");
    }
    seen[s] = true;
  }
  if (timing) {
    discard_factor(stages, *timing);  // validates and checks factor > 0
  }
}

double ReceiverConfig::effective_alpha_sq(double alpha_sq) const {
  return timing ? alpha_sq * discard_factor(stages, *timing) : alpha_sq;
}

int next_hypothesis(int stage, int previous_hypothesis,
                    unsigned eliminated_mask, const ReceiverConfig& config) {
  if (stage < 1 || stage > config.stages) {
    throw std::invalid_argument("stage out of range");
  }
  if (eliminated_mask == 0xF) {
    throw std::invalid_argument("all states eliminated, no hypothesis left");
  }
  if (stage <= config.static_prefix) {
    return config.cycle[(stage - 1) % 4];
  }
  auto pos = std::find(config.cycle.begin(), config.cycle.end(),
                       previous_hypothesis);
  if (pos == config.cycle.end()) {
    throw std::invalid_argument("previous hypothesis not in cycle");
  }
  int i = static_cast<int>(pos - config.cycle.begin());
  for (int step = 1; step <= 4; ++step) {
    int h = config.cycle[(i + step) % 4];
    if (!(eliminated_mask >> h & 1u)) {
      return h;
    }
  }
  throw std::logic_error("unreachable");
}

int LookupTable::lookup(int stage, unsigned eliminated_mask,
                        int previous_hypothesis) const {
  auto it = stage <= static_prefix
                ? entries.find({stage, 0u, -1})
                : entries.find({stage, eliminated_mask, previous_hypothesis});
  if (it == entries.end()) {
    throw std::out_of_range("receiver state not in lookup table");
  }
  return it->second;
}

LookupTable build_lookup_table(const ReceiverConfig& config) {
  config.validate();
  LookupTable table;
  table.stages = config.stages;
  table.static_prefix = config.static_prefix;

  // Static prefix: one entry per stage, history-independent.
  for (int stage = 1; stage <= std::min(config.static_prefix, config.stages);
       ++stage) {
    table.entries[{stage, 0u, -1}] = config.cycle[(stage - 1) % 4];
  }

  // Breadth-first walk over reachable (eliminated mask, previous hypothesis)
  // pairs, branching on off/on at every stage.
  std::set<std::pair<unsigned, int>> frontier = {{0u, -1}};
  for (int stage = 1; stage <= config.stages; ++stage) {
    std::set<std::pair<unsigned, int>> next;
    for (auto [mask, prev] : frontier) {
      int h = next_hypothesis(stage, prev, mask, config);
      if (stage > config.static_prefix) {
        table.entries[{stage, mask, prev}] = h;
      }
      next.insert({mask, h});  // off
      unsigned on_mask = mask | (1u << h);
      if (std::popcount(on_mask) <= 3) {
        next.insert({on_mask, h});  // on, trial continues
      }
    }
    frontier = std::move(next);
  }
  return table;
}

std::string format_lookup_table(const LookupTable& table) {
  std::ostringstream out;
  for (const auto& [key, hyp] : table.entries) {
    auto [stage, mask, prev] = key;
    out << "stage " << stage << " eliminated " << mask << " prev " << prev
        << " hypothesis " << hyp << "\n";
  }
  return out.str();
}

TrialRecord run_trial(int true_state, const ChannelParams& params,
                      const ReceiverConfig& config, RandomStream& rng) {
  TrialRecord record;
  record.true_state = true_state;
  record.stages.reserve(config.stages);
  double a2_eff = config.effective_alpha_sq(params.alpha_sq);

  unsigned eliminated = 0;
  int prev = -1;
  for (int stage = 1; stage <= config.stages; ++stage) {
    int h = next_hypothesis(stage, prev, eliminated, config);
    double p_off = off_probability(true_state, h, params, config.stages, a2_eff);
    Outcome outcome = rng.uniform() < p_off ? Outcome::kOff : Outcome::kOn;
    record.stages.push_back({h, outcome});
    if (outcome == Outcome::kOn) {
      ++record.on_count;
      eliminated |= 1u << h;
      if (eliminated == 0xF) {
        break;  // inconclusive whatever the remaining stages do
      }
    }
    prev = h;
  }
  record.eliminated_mask = eliminated;
  return record;
}

Decision decide(const TrialRecord& record) {
  if (record.on_count != 3 || std::popcount(record.eliminated_mask) != 3) {
    return {};
  }
  Decision d;
  d.conclusive = true;
  d.state = std::countr_zero(~record.eliminated_mask & 0xFu);
  return d;
}

UsdPerformance static_closed_form(const ChannelParams& params,
                                  double effective_alpha_sq) {
  double p0 = p_shorthand(0, params, effective_alpha_sq);
  double p1 = p_shorthand(1, params, effective_alpha_sq);
  double p2 = p_shorthand(2, params, effective_alpha_sq);
  double correct = p0 * (1 - p2) * (1 - p1) * (1 - p1);
  double wrong = p2 * (1 - p0) * (1 - p1) * (1 - p1) +
                 2 * p1 * (1 - p1) * (1 - p0) * (1 - p2);
  UsdPerformance perf;
  perf.p_conclusive = correct + wrong;
  perf.p_error = perf.p_conclusive > 0 ? wrong / perf.p_conclusive : 0.0;
  return perf;
}

namespace {

struct EnumAccumulator {
  double conclusive = 0.0;
  double wrong = 0.0;
};

void enumerate_from(int true_state, const ChannelParams& params,
                    const ReceiverConfig& config, double a2_eff, int stage,
                    int prev, unsigned eliminated, double prob,
                    EnumAccumulator& acc) {
  if (eliminated == 0xF) {
    return;  // inconclusive branch, contributes nothing
  }
  if (stage > config.stages) {
    if (std::popcount(eliminated) == 3) {
      int survivor = std::countr_zero(~eliminated & 0xFu);
      acc.conclusive += prob;
      if (survivor != true_state) {
        acc.wrong += prob;
      }
    }
    return;
  }
  int h = next_hypothesis(stage, prev, eliminated, config);
  double p_off = off_probability(true_state, h, params, config.stages, a2_eff);
  enumerate_from(true_state, params, config, a2_eff, stage + 1, h, eliminated,
                 prob * p_off, acc);
  enumerate_from(true_state, params, config, a2_eff, stage + 1, h,
                 eliminated | (1u << h), prob * (1 - p_off), acc);
}

EnumAccumulator enumerate_state(int true_state, const ChannelParams& params,
                                const ReceiverConfig& config) {
  EnumAccumulator acc;
  double a2_eff = config.effective_alpha_sq(params.alpha_sq);
  enumerate_from(true_state, params, config, a2_eff, 1, -1, 0u, 1.0, acc);
  return acc;
}

}  // namespace

UsdPerformance enumerate_exact(const ChannelParams& params,
                               const ReceiverConfig& config, int max_stages) {
  params.validate();
  config.validate();
  if (config.stages > max_stages) {
    throw std::length_error("stage count exceeds the enumeration cap");
  }
  double conclusive = 0.0;
  double wrong = 0.0;
  for (int m = 0; m < 4; ++m) {
    EnumAccumulator acc = enumerate_state(m, params, config);
    conclusive += params.priors[m] * acc.conclusive;
    wrong += params.priors[m] * acc.wrong;
  }
  UsdPerformance perf;
  perf.p_conclusive = conclusive;
  perf.p_error = conclusive > 0 ? wrong / conclusive : 0.0;
  return perf;
}

UsdPerformance enumerate_exact_for_state(int true_state,
                                         const ChannelParams& params,
                                         const ReceiverConfig& config,
                                         int max_stages) {
  if (true_state < 0 || true_state > 3) {
    throw std::invalid_argument("state index must lie in {0,1,2,3}");
  }
  params.validate();
  config.validate();
  if (config.stages > max_stages) {
    throw std::length_error("stage count exceeds the enumeration cap");
  }
  EnumAccumulator acc = enumerate_state(true_state, params, config);
  UsdPerformance perf;
  perf.p_conclusive = acc.conclusive;
  perf.p_error = acc.conclusive > 0 ? acc.wrong / acc.conclusive : 0.0;
  return perf;
}

}  // namespace usd
