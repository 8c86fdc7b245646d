#pragma once

#include <utility>

#include "usd/rng.hpp"

// Heterodyne baseline emulating unambiguous discrimination. Outcomes follow
// the state's Q function: both quadratures are independent Gaussians with
// means +-sqrt(eta*|a|^2/2) (signs given by the quadrant of the state) and
// variance 1/2. Outcomes inside the square |x| < t, |p| < t are declared
// inconclusive; everything else is decided by the quadrant sign pair.

namespace usd {

struct HeterodyneModel {
  double threshold = 0.0;  // t >= 0, same for both quadratures
  double eta = 1.0;        // detection efficiency of the baseline

  void validate() const;
};

// Standard normal CDF.
double norm_cdf(double z);

// One heterodyne outcome (x, p) for true state m.
std::pair<double, double> sample_outcome(int m, double alpha_sq, double eta,
                                         RandomStream& rng);

// 1 - Pr(|x| < t) * Pr(|p| < t); identical for all four states by symmetry.
double conclusive_probability(const HeterodyneModel& model, double alpha_sq);

// Wrong conclusive results / all conclusive results. The factorized Gaussian
// makes the integral over (wrong quadrant, outside the square) a product of
// one-dimensional CDF differences, so it is evaluated in closed form.
double error_probability(const HeterodyneModel& model, double alpha_sq);

// Threshold t with conclusive_probability(t) within tol of target_pc, by
// bisection (conclusive_probability is strictly decreasing in t).
double match_threshold(double target_pc, double alpha_sq, double eta,
                       double tol = 1e-9);

}  // namespace usd
