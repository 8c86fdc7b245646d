#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usd/engine.hpp"

// Flat key-value experiment description, one "key = value" pair per line.
// '#' starts a comment. Parsing validates every line and reports all
// problems, not just the first.

namespace usd {

enum class SweepVariable { kAlphaSq, kStages, kEtaDet };

std::string sweep_variable_name(SweepVariable v);

struct ExperimentConfig {
  SweepVariable sweep = SweepVariable::kAlphaSq;
  double sweep_from = 0.5;
  double sweep_to = 3.0;
  double sweep_step = 0.5;

  ChannelParams channel;
  ReceiverConfig receiver;
  HeterodyneModel heterodyne;

  // Any of: static_closed_form, adaptive_enum, adaptive_mc, heterodyne_matched,
  // bound.
  std::vector<std::string> methods = {"adaptive_enum"};

  std::string out = "results.csv";
  std::uint64_t seed = 0;
  int trials = 24000;
  int batches = 5;
  int workers = 1;

  void validate() const;  // throws with an aggregate message
};

struct ParseIssue {
  int line;  // 1-based; 0 for whole-file problems
  std::string message;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;  // engaged iff issues is empty
  std::vector<ParseIssue> issues;
};

ParseResult parse_config(const std::string& text);

// Emits every field in the documented schema; parse_config of the result
// reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace usd
