#pragma once

#include <array>
#include <cmath>
#include <optional>

// Click model for a QPSK coherent-state receiver built from displacement
// operations and on/off photon detectors. States are labelled m = 0..3 with
// phases (2m+1)*pi/4; the only physics needed anywhere is the per-stage
// off-click probability together with the bookkeeping for system efficiency
// and the guard-interval (discarding) loss of the temporal implementation.

namespace usd {

struct ChannelParams {
  double alpha_sq = 1.0;        // mean photon number |alpha|^2
  double eta_path = 0.91;       // path transmittance
  double eta_det = 0.73;        // detector quantum efficiency
  double visibility = 1.0;      // interference visibility xi
  double dark_rate = 0.0;       // dark-count parameter nu, per time bin
  std::array<double, 4> priors = {0.25, 0.25, 0.25, 0.25};

  double total_efficiency() const { return eta_path * eta_det; }

  // Throws std::invalid_argument on any out-of-range field.
  void validate() const;
};

struct TimingModel {
  double signal_duration = 60.0;  // total signal width T, microseconds
  double gap_duration = 0.3;      // discarded interval between bins

  void validate() const;
};

// Fraction of the signal surviving the inter-bin guard intervals:
// 1 - gap*(M-1)/T. Multiplies alpha_sq before the M-way split.
double discard_factor(int stages, const TimingModel& timing);

// Probability of an "off" outcome when hypothesis i is tested against true
// state m, with the signal split into `stages` equal bins:
//   exp(-nu - 2*eta*(a2_eff/stages)*(1 - xi*cos((m-i)*pi/2)))
// The cosine is evaluated exactly from the cyclic distance (m-i) mod 4.
double off_probability(int m, int i, const ChannelParams& params, int stages,
                       double effective_alpha_sq);

// Four-stage shorthand P_s: the off probability at cyclic distance s with
// stages = 4. Bit-for-bit equal to off_probability(s, 0, params, 4, a2).
double p_shorthand(int s, const ChannelParams& params,
                   double effective_alpha_sq);

}  // namespace usd
