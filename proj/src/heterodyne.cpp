#include "usd/heterodyne.hpp"

#include <cmath>
#include <stdexcept>

namespace usd {

namespace {

constexpr double kSigma = 0.70710678118654752440;  // sqrt(1/2)

// Quadrant sign pair of state m (phases (2m+1)*pi/4).
constexpr int kSignX[4] = {+1, -1, -1, +1};
constexpr int kSignP[4] = {+1, +1, -1, -1};

double quadrature_mean(double alpha_sq, double eta) {
  return std::sqrt(eta * alpha_sq / 2.0);
}

// Pr(lo < g < hi) for g ~ N(mu, kSigma^2).
double gauss_interval(double lo, double hi, double mu) {
  return norm_cdf((hi - mu) / kSigma) - norm_cdf((lo - mu) / kSigma);
}

}  // namespace

void HeterodyneModel::validate() const {
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in [0,1]");
  }
}

double norm_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

std::pair<double, double> sample_outcome(int m, double alpha_sq, double eta,
                                         RandomStream& rng) {
  if (m < 0 || m > 3) {
    throw std::invalid_argument("state index must lie in {0,1,2,3}");
  }
  double mu = quadrature_mean(alpha_sq, eta);
  double x = kSignX[m] * mu + kSigma * rng.normal();
  double p = kSignP[m] * mu + kSigma * rng.normal();
  return {x, p};
}

double conclusive_probability(const HeterodyneModel& model, double alpha_sq) {
  model.validate();
  double t = model.threshold;
  double mu = quadrature_mean(alpha_sq, model.eta);
  double inside = gauss_interval(-t, t, mu);  // same for both axes
  return 1.0 - inside * inside;
}

double error_probability(const HeterodyneModel& model, double alpha_sq) {
  model.validate();
  double t = model.threshold;
  double mu = quadrature_mean(alpha_sq, model.eta);
  double p_conclusive = conclusive_probability(model, alpha_sq);
  if (p_conclusive <= 0.0) {
    return 0.0;
  }
  // By symmetry condition on the state with means (+mu, +mu). Correct and
  // conclusive = (x > 0 and p > 0) minus the part inside the square.
  double positive = 1.0 - norm_cdf(-mu / kSigma);
  double band = t > 0.0 ? gauss_interval(0.0, t, mu) : 0.0;
  double correct_conclusive = positive * positive - band * band;
  return (p_conclusive - correct_conclusive) / p_conclusive;
}

double match_threshold(double target_pc, double alpha_sq, double eta,
                       double tol) {
  if (!(target_pc > 0.0 && target_pc <= 1.0)) {
    throw std::invalid_argument("target conclusive probability must lie in (0,1]");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tolerance must be > 0");
  }
  HeterodyneModel model;
  model.eta = eta;
  if (conclusive_probability(model, alpha_sq) <= target_pc) {
    return 0.0;  // t = 0 already attains (or equals) the target
  }
  double lo = 0.0;
  double hi = 1.0;
  model.threshold = hi;
  int expand = 0;
  while (conclusive_probability(model, alpha_sq) > target_pc) {
    hi *= 2.0;
    model.threshold = hi;
    if (++expand > 60) {
      throw std::runtime_error("threshold search failed to bracket target");
    }
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    model.threshold = mid;
    double pc = conclusive_probability(model, alpha_sq);
    if (std::abs(pc - target_pc) <= tol) {
      return mid;
    }
    if (pc > target_pc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  model.threshold = 0.5 * (lo + hi);
  if (std::abs(conclusive_probability(model, alpha_sq) - target_pc) <= tol) {
    return model.threshold;
  }
  throw std::runtime_error("threshold bisection did not converge");
}

}  // namespace usd
