#pragma once

#include <array>

// Optimal unambiguous-discrimination bound for the four symmetric coherent
// states. The states are superpositions of the four modulo-4 photon-number
// classes; with equal priors the attainable conclusive probability is
// 4 * min_k lambda_k, where lambda_k is the weight of |alpha|^2 in class k:
//   lambda_k = e^{-|a|^2} * sum_{n = k mod 4} |a|^{2n} / n!

namespace usd {

struct BoundInput {
  double alpha_sq = 1.0;
  double series_tolerance = 1e-15;
  int max_terms = 500;
};

// Weights of the four photon-number classes; they sum to 1 up to the series
// tolerance. Terms are summed ascending with the ratio recurrence a2/n, so
// no factorial ever overflows.
std::array<double, 4> number_class_weights(const BoundInput& input);

// 4 * min_k lambda_k, in [0,1]. Throws std::runtime_error when the series
// has not converged within max_terms.
double optimal_conclusive_probability(const BoundInput& input);

}  // namespace usd
