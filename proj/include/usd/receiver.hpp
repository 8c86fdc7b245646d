#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "usd/physics.hpp"
#include "usd/rng.hpp"

// Static (M = 4) and adaptive (M > 4) unambiguous-discrimination receivers.
//
// A trial runs M detection stages. Each stage tests one hypothesis state by
// displacing it to vacuum; an "on" click eliminates the hypothesis. The
// first `static_prefix` stages test the fixed cycle [0,2,1,3]. Afterwards
// the hypothesis advances cyclically from the previously tested state,
// skipping eliminated states, so the remaining candidates keep being probed
// in round-robin order and, once three states are eliminated, the survivor
// is tested for the rest of the trial. A trial is conclusive iff exactly
// three "on" events occurred; a fourth "on" makes it inconclusive.

namespace usd {

struct ReceiverConfig {
  int stages = 4;
  std::array<int, 4> cycle = {0, 2, 1, 3};
  int static_prefix = 4;
  std::optional<TimingModel> timing;  // absent => no discarding loss

  void validate() const;

  // alpha_sq after the discarding loss (1 when no timing model).
  double effective_alpha_sq(double alpha_sq) const;
};

enum class Outcome : std::uint8_t { kOff = 0, kOn = 1 };

struct StageRecord {
  int hypothesis;
  Outcome outcome;
};

struct TrialRecord {
  int true_state = 0;
  std::vector<StageRecord> stages;  // executed stages; shorter than M only
                                    // when all four states got eliminated
  int on_count = 0;
  unsigned eliminated_mask = 0;  // bit m set iff state m was eliminated
};

struct Decision {
  bool conclusive = false;
  int state = -1;  // valid only when conclusive
};

// Hypothesis for `stage` (1-based) given the eliminated set and the
// hypothesis tested at the previous stage. Stages up to the static prefix
// ignore both and return cycle[stage-1]. Throws when all four states are
// eliminated (the trial must already have been declared inconclusive).
int next_hypothesis(int stage, int previous_hypothesis,
                    unsigned eliminated_mask, const ReceiverConfig& config);

// Flat table of every reachable receiver state, the analog of a hard-coded
// feedback table. Static-prefix stages contribute one entry each (their
// hypothesis does not depend on history); adaptive stages are keyed by
// (stage, eliminated mask, previous hypothesis).
struct LookupTable {
  int stages = 0;
  int static_prefix = 0;
  // key: stage, eliminated mask, previous hypothesis. Static-prefix entries
  // use mask 0 and the fixed predecessor.
  std::map<std::tuple<int, unsigned, int>, int> entries;

  int lookup(int stage, unsigned eliminated_mask, int previous_hypothesis) const;
};

LookupTable build_lookup_table(const ReceiverConfig& config);

// One line per entry: "stage <j> eliminated <mask> prev <p> hypothesis <k>",
// sorted by (stage, mask, prev). LF line endings.
std::string format_lookup_table(const LookupTable& table);

// Simulates one trial; consumes one uniform draw per executed stage.
TrialRecord run_trial(int true_state, const ChannelParams& params,
                      const ReceiverConfig& config, RandomStream& rng);

Decision decide(const TrialRecord& record);

struct UsdPerformance {
  double p_conclusive = 0.0;
  double p_error = 0.0;  // wrong conclusive / all conclusive; 0 when p_c = 0
};

// Closed form for the 4-stage static receiver.
UsdPerformance static_closed_form(const ChannelParams& params,
                                  double effective_alpha_sq);

// Exact prior-weighted performance by enumerating all outcome sequences.
// Cost grows as 2^stages; stages above `max_stages` raise std::length_error.
UsdPerformance enumerate_exact(const ChannelParams& params,
                               const ReceiverConfig& config,
                               int max_stages = 20);

// Same enumeration conditioned on one true state.
UsdPerformance enumerate_exact_for_state(int true_state,
                                         const ChannelParams& params,
                                         const ReceiverConfig& config,
                                         int max_stages = 20);

}  // namespace usd
