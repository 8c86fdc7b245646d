#include "usd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usd {

std::array<double, 4> number_class_weights(const BoundInput& input) {
  if (!(input.alpha_sq >= 0.0)) {
    throw std::invalid_argument("alpha_sq must be >= 0");
  }
  if (!(input.series_tolerance > 0.0)) {
    throw std::invalid_argument("series_tolerance must be > 0");
  }
  std::array<double, 4> lambda = {0.0, 0.0, 0.0, 0.0};
  double term = std::exp(-input.alpha_sq);  // n = 0
  int n = 0;
  for (;; ++n) {
    if (n > input.max_terms) {
      throw std::runtime_error("number-class series did not converge");
    }
    lambda[n % 4] += term;
    // Terms decay monotonically once n > a2; the tail is then bounded by a
    // geometric series with ratio < 1, so this stopping rule is safe.
    if (n > input.alpha_sq && term < input.series_tolerance) {
      break;
    }
    term *= input.alpha_sq / (n + 1);
  }
  return lambda;
}

double optimal_conclusive_probability(const BoundInput& input) {
  std::array<double, 4> lambda = number_class_weights(input);
  double p = 4.0 * *std::min_element(lambda.begin(), lambda.end());
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace usd
