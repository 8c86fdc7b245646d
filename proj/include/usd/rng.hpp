#pragma once

#include <cstdint>
#include <utility>

namespace usd {

// Counter-derived per-trial seeding. The seed of every trial is a pure
// function of (master seed, batch index, trial index), so the randomness a
// trial consumes does not depend on scheduling or worker count.
//
// Construction: three rounds of the splitmix64 finalizer, folding in the
// batch and trial indices multiplied by odd constants. Each round is a
// bijection on 64-bit words, so for fixed master and batch the map
// trial -> seed is injective.
std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t batch_index,
                                std::uint64_t trial_index);

// Small deterministic random stream (splitmix64 core). One instance per
// trial; never shared between threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform double in [0,1) from the top 53 bits.
  double uniform();

  // Standard normal via Box-Muller; generates draws in pairs and caches the
  // second, so the consumption order is deterministic.
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace usd
