#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>
#include <sstream>

#include "usd/receiver.hpp"

using namespace usd;

namespace {

ChannelParams make_params(double alpha_sq, double eta, double xi, double nu) {
  ChannelParams p;
  p.alpha_sq = alpha_sq;
  p.eta_path = 1.0;
  p.eta_det = eta;
  p.visibility = xi;
  p.dark_rate = nu;
  return p;
}

ReceiverConfig make_config(int stages) {
  ReceiverConfig c;
  c.stages = stages;
  return c;
}

}  // namespace

TEST_CASE("static prefix tests the fixed cycle") {
  ReceiverConfig c = make_config(8);
  CHECK(next_hypothesis(1, -1, 0u, c) == 0);
  CHECK(next_hypothesis(2, 0, 0b0001u, c) == 2);
  CHECK(next_hypothesis(3, 2, 0b0101u, c) == 1);
  CHECK(next_hypothesis(4, 1, 0b0111u, c) == 3);
}

TEST_CASE("adaptive stages advance cyclically and skip eliminated states") {
  ReceiverConfig c = make_config(10);
  // nothing eliminated: keep cycling 0,2,1,3
  CHECK(next_hypothesis(5, 3, 0u, c) == 0);
  CHECK(next_hypothesis(6, 0, 0u, c) == 2);
  CHECK(next_hypothesis(7, 2, 0u, c) == 1);
  CHECK(next_hypothesis(8, 1, 0u, c) == 3);
  // eliminated {0,2}: first surviving state of the cycle
  CHECK(next_hypothesis(5, 3, 0b0101u, c) == 1);
  // eliminated {0,2,1}: the survivor, and it stays the survivor
  CHECK(next_hypothesis(7, 1, 0b0111u, c) == 3);
  CHECK(next_hypothesis(8, 3, 0b0111u, c) == 3);
  CHECK(next_hypothesis(10, 3, 0b0111u, c) == 3);
  CHECK_THROWS_AS(next_hypothesis(6, 0, 0b1111u, c), std::invalid_argument);
}

TEST_CASE("lookup table has only the static entries at M=4") {
  LookupTable table = build_lookup_table(make_config(4));
  CHECK(table.entries.size() == 4);
  CHECK(table.lookup(1, 0u, -1) == 0);
  CHECK(table.lookup(4, 0u, -1) == 3);
}

TEST_CASE("lookup table entry for stage 5 with state 0 eliminated") {
  LookupTable table = build_lookup_table(make_config(5));
  CHECK(table.lookup(5, 0b0001u, 3) == 2);
}

TEST_CASE("lookup table reproduces next_hypothesis over all entries") {
  ReceiverConfig c = make_config(10);
  LookupTable table = build_lookup_table(c);
  for (const auto& [key, hyp] : table.entries) {
    auto [stage, mask, prev] = key;
    CHECK(next_hypothesis(stage, prev, mask, c) == hyp);
  }
}

TEST_CASE("lookup table covers every state reached in simulation") {
  ReceiverConfig c = make_config(12);
  ChannelParams p = make_params(2.0, 0.8, 0.97, 1e-3);
  LookupTable table = build_lookup_table(c);
  RandomStream rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    TrialRecord r = run_trial(trial % 4, p, c, rng);
    unsigned mask = 0;
    int prev = -1;
    for (size_t j = 0; j < r.stages.size(); ++j) {
      int stage = static_cast<int>(j) + 1;
      CHECK(table.lookup(stage, mask, prev) == r.stages[j].hypothesis);
      if (r.stages[j].outcome == Outcome::kOn) {
        mask |= 1u << r.stages[j].hypothesis;
      }
      prev = r.stages[j].hypothesis;
    }
  }
}

TEST_CASE("lookup table text export format") {
  LookupTable table = build_lookup_table(make_config(5));
  std::string text = format_lookup_table(table);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  CHECK(lines.size() == table.entries.size());
  CHECK(lines[0] == "stage 1 eliminated 0 prev -1 hypothesis 0");
  // 4 static entries plus one adaptive entry per surviving mask
  CHECK(lines.size() == 4 + 15);
}

TEST_CASE("trial never eliminates the true state under ideal conditions") {
  ChannelParams p = make_params(1.5, 1.0, 1.0, 0.0);
  ReceiverConfig c = make_config(10);
  RandomStream rng(17);
  for (int trial = 0; trial < 5000; ++trial) {
    int m = trial % 4;
    TrialRecord r = run_trial(m, p, c, rng);
    CHECK((r.eliminated_mask >> m & 1u) == 0u);
    Decision d = decide(r);
    if (d.conclusive) {
      CHECK(d.state == m);
    }
  }
}

TEST_CASE("zero amplitude and no dark counts gives all-off trials") {
  ChannelParams p = make_params(0.0, 1.0, 1.0, 0.0);
  ReceiverConfig c = make_config(6);
  RandomStream rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    TrialRecord r = run_trial(trial % 4, p, c, rng);
    CHECK(r.on_count == 0);
    CHECK(r.eliminated_mask == 0u);
    CHECK_FALSE(decide(r).conclusive);
  }
}

TEST_CASE("decision rule") {
  TrialRecord r;
  r.on_count = 3;
  r.eliminated_mask = 0b0111u;  // {0,1,2} eliminated
  Decision d = decide(r);
  CHECK(d.conclusive);
  CHECK(d.state == 3);

  r.on_count = 2;
  r.eliminated_mask = 0b0011u;
  CHECK_FALSE(decide(r).conclusive);

  r.on_count = 4;
  r.eliminated_mask = 0b1111u;
  CHECK_FALSE(decide(r).conclusive);
}

TEST_CASE("replaying a trial record reproduces its hypotheses") {
  ChannelParams p = make_params(2.2, 0.7, 0.98, 2e-3);
  ReceiverConfig c = make_config(14);
  RandomStream rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    TrialRecord r = run_trial(trial % 4, p, c, rng);
    unsigned mask = 0;
    int prev = -1;
    for (size_t j = 0; j < r.stages.size(); ++j) {
      CHECK(next_hypothesis(static_cast<int>(j) + 1, prev, mask, c) ==
            r.stages[j].hypothesis);
      if (r.stages[j].outcome == Outcome::kOn) {
        mask |= 1u << r.stages[j].hypothesis;
      }
      prev = r.stages[j].hypothesis;
    }
    CHECK(mask == r.eliminated_mask);
  }
}

TEST_CASE("static closed form pinned ideal value") {
  ChannelParams p = make_params(1.0, 1.0, 1.0, 0.0);
  UsdPerformance perf = static_closed_form(p, 1.0);
  CHECK(perf.p_conclusive == doctest::Approx(0.09786371763498013).epsilon(1e-10));
  CHECK(perf.p_error == 0.0);
}

TEST_CASE("static closed form vanishes without photons") {
  ChannelParams p = make_params(0.0, 1.0, 1.0, 0.0);
  UsdPerformance perf = static_closed_form(p, 0.0);
  CHECK(perf.p_conclusive == 0.0);
  CHECK(perf.p_error == 0.0);  // 0/0 defined as 0
}

TEST_CASE("enumeration agrees with the closed form at M=4") {
  RandomStream rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    ChannelParams p = make_params(5.0 * rng.uniform(), rng.uniform(),
                                  rng.uniform(), 0.01 * rng.uniform());
    ReceiverConfig c = make_config(4);
    UsdPerformance exact = enumerate_exact(p, c);
    UsdPerformance closed = static_closed_form(p, p.alpha_sq);
    CHECK(exact.p_conclusive ==
          doctest::Approx(closed.p_conclusive).epsilon(1e-12));
    CHECK(exact.p_error == doctest::Approx(closed.p_error).epsilon(1e-12));
  }
}

TEST_CASE("enumeration is zero-error under ideal conditions") {
  for (int stages : {4, 7, 12}) {
    ChannelParams p = make_params(1.8, 0.66, 1.0, 0.0);
    UsdPerformance perf = enumerate_exact(p, make_config(stages));
    CHECK(perf.p_error == 0.0);
  }
}

TEST_CASE("enumeration regression value for ten ideal stages") {
  ChannelParams p = make_params(1.0, 1.0, 1.0, 0.0);
  UsdPerformance perf = enumerate_exact(p, make_config(10));
  CHECK(perf.p_conclusive ==
        doctest::Approx(0.16110815882757024).epsilon(1e-12));
  CHECK(perf.p_conclusive > 0.09786371763498013);
  CHECK(perf.p_conclusive < 0.24554496545716287);
}

TEST_CASE("enumeration is symmetric across true states at M=4") {
  // each state sees the same multiset of displacement distances in the
  // static cycle, so the four conditional results coincide
  ChannelParams p = make_params(1.4, 0.66, 0.994, 1.5e-3);
  ReceiverConfig c = make_config(4);
  UsdPerformance first = enumerate_exact_for_state(0, p, c);
  for (int m = 1; m < 4; ++m) {
    UsdPerformance perf = enumerate_exact_for_state(m, p, c);
    CHECK(perf.p_conclusive ==
          doctest::Approx(first.p_conclusive).epsilon(1e-12));
    CHECK(perf.p_error == doctest::Approx(first.p_error).epsilon(1e-12));
  }
}

TEST_CASE("aggregate enumeration is the prior-weighted per-state average") {
  // with feedback the conditional results differ by state, but the
  // prior-weighted combination must reproduce the aggregate exactly
  ChannelParams p = make_params(1.4, 0.66, 0.994, 1.5e-3);
  ReceiverConfig c = make_config(9);
  double pc = 0.0;
  double wrong = 0.0;
  for (int m = 0; m < 4; ++m) {
    UsdPerformance perf = enumerate_exact_for_state(m, p, c);
    pc += p.priors[m] * perf.p_conclusive;
    wrong += p.priors[m] * perf.p_conclusive * perf.p_error;
  }
  UsdPerformance agg = enumerate_exact(p, c);
  CHECK(agg.p_conclusive == doctest::Approx(pc).epsilon(1e-12));
  CHECK(agg.p_error == doctest::Approx(wrong / pc).epsilon(1e-12));
}

TEST_CASE("enumeration rejects stage counts beyond the cap") {
  ChannelParams p = make_params(1.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(enumerate_exact(p, make_config(21)), std::length_error);
}

TEST_CASE("config validation") {
  ReceiverConfig c = make_config(4);
  c.validate();
  c.stages = 3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.stages = 8;
  c.cycle = {0, 2, 2, 3};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
