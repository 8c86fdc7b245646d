#include "usd/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace usd {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

void ChannelParams::validate() const {
  if (!(alpha_sq >= 0.0)) {
    throw std::invalid_argument("alpha_sq must be >= 0");
  }
  check_unit_interval(eta_path, "eta_path");
  check_unit_interval(eta_det, "eta_det");
  check_unit_interval(visibility, "visibility");
  if (!(dark_rate >= 0.0)) {
    throw std::invalid_argument("dark_rate must be >= 0");
  }
  double sum = 0.0;
  for (double p : priors) {
    check_unit_interval(p, "prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("priors must sum to 1");
  }
}

void TimingModel::validate() const {
  if (!(signal_duration > 0.0)) {
    throw std::invalid_argument("signal_duration must be > 0");
  }
  if (!(gap_duration >= 0.0)) {
    throw std::invalid_argument("gap_duration must be >= 0");
  }
}

double discard_factor(int stages, const TimingModel& timing) {
  timing.validate();
  if (stages < 1) {
    throw std::invalid_argument("stage count must be >= 1");
  }
  double factor =
      1.0 - timing.gap_duration * (stages - 1) / timing.signal_duration;
  if (!(factor > 0.0)) {
    throw std::invalid_argument("guard intervals consume the whole signal");
  }
  return factor;
}

double off_probability(int m, int i, const ChannelParams& params, int stages,
                       double effective_alpha_sq) {
  if (m < 0 || m > 3 || i < 0 || i > 3) {
    throw std::invalid_argument("state index must lie in {0,1,2,3}");
  }
  if (stages < 1) {
    throw std::invalid_argument("stage count must be >= 1");
  }
  if (!(effective_alpha_sq >= 0.0)) {
    throw std::invalid_argument("effective_alpha_sq must be >= 0");
  }
  // cos(d*pi/2) for cyclic distance d, exact.
  static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
  int d = ((m - i) % 4 + 4) % 4;
  double eta = params.total_efficiency();
  return std::exp(-params.dark_rate -
                  2.0 * eta * (effective_alpha_sq / stages) *
                      (1.0 - params.visibility * kCos[d]));
}

double p_shorthand(int s, const ChannelParams& params,
                   double effective_alpha_sq) {
  if (s < 0 || s > 2) {
    throw std::invalid_argument("shorthand index must lie in {0,1,2}");
  }
  return off_probability(s, 0, params, 4, effective_alpha_sq);
}

}  // namespace usd
