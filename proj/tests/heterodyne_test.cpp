#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "usd/heterodyne.hpp"

using namespace usd;

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}

TEST_CASE("vacuum outcomes are zero-mean with variance one half") {
  RandomStream rng(11);
  double sum_x = 0.0, sum_p = 0.0, sum_x2 = 0.0, sum_p2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    auto [x, p] = sample_outcome(i % 4, 0.0, 1.0, rng);
    sum_x += x;
    sum_p += p;
    sum_x2 += x * x;
    sum_p2 += p * p;
  }
  double se = kSqrtHalf / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sum_x / n) < 4 * se);
  CHECK(std::abs(sum_p / n) < 4 * se);
  CHECK(sum_x2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sum_p2 / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("sample means sit in the right quadrant") {
  RandomStream rng(13);
  const int n = 1000000;
  double mu = std::sqrt(0.8 * 1.7 / 2.0);
  for (int m = 0; m < 4; ++m) {
    double sum_x = 0.0, sum_p = 0.0;
    for (int i = 0; i < n; ++i) {
      auto [x, p] = sample_outcome(m, 1.7, 0.8, rng);
      sum_x += x;
      sum_p += p;
    }
    double se = kSqrtHalf / std::sqrt(static_cast<double>(n));
    double ex = (m == 0 || m == 3) ? mu : -mu;
    double ep = (m == 0 || m == 1) ? mu : -mu;
    CHECK(std::abs(sum_x / n - ex) < 4 * se);
    CHECK(std::abs(sum_p / n - ep) < 4 * se);
  }
}

TEST_CASE("conclusive probability pinned values") {
  CHECK(conclusive_probability({.threshold = 0.0}, 1.3) == 1.0);
  CHECK(conclusive_probability({.threshold = kSqrtHalf}, 1.0) ==
        doctest::Approx(0.7722325634445196).epsilon(1e-10));
  // far threshold: conclusive probability collapses towards zero
  CHECK(conclusive_probability({.threshold = 12.0}, 1.0) < 1e-6);
}

TEST_CASE("conclusive probability is strictly decreasing in the threshold") {
  double prev = 2.0;
  for (double t = 0.0; t <= 4.0; t += 0.1) {
    double pc = conclusive_probability({.threshold = t}, 1.5);
    CHECK(pc < prev);
    prev = pc;
  }
}

TEST_CASE("error probability pinned values") {
  // vacuum, no threshold: one of four quadrants is right
  CHECK(error_probability({.threshold = 0.0}, 0.0) == doctest::Approx(0.75));
  // |a|^2=1, t=0: per-axis sign errors give 1 - Phi(1)^2
  CHECK(error_probability({.threshold = 0.0}, 1.0) ==
        doctest::Approx(0.29213901826285904).epsilon(1e-10));
  // thresholding discards ambiguous outcomes
  CHECK(error_probability({.threshold = 1.0}, 1.0) <
        error_probability({.threshold = 0.0}, 1.0));
}

TEST_CASE("analytic error agrees with Monte Carlo") {
  RandomStream rng(29);
  for (double a2 : {0.5, 1.0, 2.5}) {
    for (double t : {0.0, 0.5, 1.2}) {
      HeterodyneModel model{.threshold = t, .eta = 1.0};
      const int n = 1000000;
      long conclusive = 0;
      long wrong = 0;
      for (int i = 0; i < n; ++i) {
        int m = static_cast<int>(rng.uniform() * 4.0);
        auto [x, p] = sample_outcome(m, a2, model.eta, rng);
        if (std::abs(x) < t && std::abs(p) < t) {
          continue;
        }
        ++conclusive;
        int k = x >= 0 ? (p >= 0 ? 0 : 3) : (p >= 0 ? 1 : 2);
        if (k != m) {
          ++wrong;
        }
      }
      double mc_err = static_cast<double>(wrong) / conclusive;
      double se = std::sqrt(mc_err * (1.0 - mc_err) / conclusive);
      double analytic = error_probability(model, a2);
      CHECK(std::abs(mc_err - analytic) < 3.5 * se + 1e-9);
    }
  }
}

TEST_CASE("threshold matching") {
  CHECK(match_threshold(1.0, 1.0, 1.0) == 0.0);
  double t = match_threshold(0.7722325634445196, 1.0, 1.0, 1e-8);
  CHECK(t == doctest::Approx(kSqrtHalf).epsilon(1e-5));
  for (double q = 0.1; q <= 0.9; q += 0.1) {
    double tq = match_threshold(q, 1.4, 1.0, 1e-9);
    CHECK(conclusive_probability({.threshold = tq}, 1.4) ==
          doctest::Approx(q).epsilon(1e-7));
  }
  CHECK_THROWS_AS(match_threshold(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("results do not depend on the true state") {
  // conclusive probability is state independent by symmetry; spot check the
  // sampled decision statistics per state
  RandomStream rng(31);
  HeterodyneModel model{.threshold = 0.6, .eta = 1.0};
  double a2 = 1.2;
  std::array<long, 4> conclusive = {0, 0, 0, 0};
  std::array<long, 4> wrong = {0, 0, 0, 0};
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    int m = i % 4;
    auto [x, p] = sample_outcome(m, a2, model.eta, rng);
    if (std::abs(x) < model.threshold && std::abs(p) < model.threshold) {
      continue;
    }
    ++conclusive[m];
    int k = x >= 0 ? (p >= 0 ? 0 : 3) : (p >= 0 ? 1 : 2);
    if (k != m) {
      ++wrong[m];
    }
  }
  double analytic = error_probability(model, a2);
  for (int m = 0; m < 4; ++m) {
    double err = static_cast<double>(wrong[m]) / conclusive[m];
    double se = std::sqrt(err * (1.0 - err) / conclusive[m]);
    CHECK(std::abs(err - analytic) < 4 * se);
  }
}
