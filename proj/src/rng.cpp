#include "usd/rng.hpp"

#include <cmath>

namespace usd {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t batch_index,
                                std::uint64_t trial_index) {
  std::uint64_t h = mix64(master_seed + kGamma);
  h = mix64(h ^ (batch_index * 0xd6e8feb86659fd93ull + 0xa0761d6478bd642full));
  h = mix64(h ^ (trial_index * 0xe7037ed1a0b428dbull + 0x8ebc6af09c88c6e3ull));
  return h;
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 is kept away from 0.
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace usd
