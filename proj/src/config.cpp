#include "usd/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace usd {

namespace {

const std::set<std::string> kKnownMethods = {
    "static_closed_form", "adaptive_enum", "adaptive_mc", "heterodyne_matched",
    "bound"};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    return "";
  }
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    parts.push_back(trim(item));
  }
  return parts;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LineContext {
  int line;
  std::vector<ParseIssue>* issues;

  void error(const std::string& message) const {
    issues->push_back({line, message});
  }

  bool parse_double(const std::string& value, double* out) const {
    const char* begin = value.c_str();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, *out);
    if (ec != std::errc() || ptr != end) {
      error("expected a number, got '" + value + "'");
      return false;
    }
    return true;
  }

  bool parse_int(const std::string& value, int* out) const {
    const char* begin = value.c_str();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, *out);
    if (ec != std::errc() || ptr != end) {
      error("expected an integer, got '" + value + "'");
      return false;
    }
    return true;
  }

  bool parse_u64(const std::string& value, std::uint64_t* out) const {
    const char* begin = value.c_str();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, *out);
    if (ec != std::errc() || ptr != end) {
      error("expected an unsigned integer, got '" + value + "'");
      return false;
    }
    return true;
  }
};

}  // namespace

std::string sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kAlphaSq:
      return "alpha_sq";
    case SweepVariable::kStages:
      return "stages";
    case SweepVariable::kEtaDet:
      return "eta_det";
  }
  throw std::invalid_argument("unknown sweep variable");
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  if (!(sweep_step > 0.0)) {
    problems.push_back("sweep_step must be > 0");
  }
  if (sweep_to < sweep_from) {
    problems.push_back("sweep range is empty");
  }
  try {
    channel.validate();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  try {
    receiver.validate();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  try {
    heterodyne.validate();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  if (methods.empty()) {
    problems.push_back("methods must not be empty");
  }
  for (const auto& m : methods) {
    if (!kKnownMethods.count(m)) {
      problems.push_back("unknown method '" + m + "'");
    }
  }
  if (trials < 1) {
    problems.push_back("trials must be >= 1");
  }
  if (batches < 2) {
    problems.push_back("batches must be >= 2");
  }
  if (workers < 0) {
    problems.push_back("workers must be >= 0");
  }
  if (out.empty()) {
    problems.push_back("out must not be empty");
  }
  if (!problems.empty()) {
    std::string joined;
    for (const auto& p : problems) {
      if (!joined.empty()) {
        joined += "; ";
      }
      joined += p;
    }
    throw std::invalid_argument(joined);
  }
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  ExperimentConfig cfg;
  bool timing_on = false;
  TimingModel timing;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineContext ctx{line_no, &result.issues};
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      ctx.error("expected 'key = value'");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      ctx.error("missing key before '='");
      continue;
    }
    if (value.empty()) {
      ctx.error("missing value for '" + key + "'");
      continue;
    }

    if (key == "sweep") {
      if (value == "alpha_sq") {
        cfg.sweep = SweepVariable::kAlphaSq;
      } else if (value == "stages") {
        cfg.sweep = SweepVariable::kStages;
      } else if (value == "eta_det") {
        cfg.sweep = SweepVariable::kEtaDet;
      } else {
        ctx.error("sweep must be alpha_sq, stages or eta_det");
      }
    } else if (key == "sweep_from") {
      ctx.parse_double(value, &cfg.sweep_from);
    } else if (key == "sweep_to") {
      ctx.parse_double(value, &cfg.sweep_to);
    } else if (key == "sweep_step") {
      ctx.parse_double(value, &cfg.sweep_step);
    } else if (key == "alpha_sq") {
      ctx.parse_double(value, &cfg.channel.alpha_sq);
    } else if (key == "eta_path") {
      ctx.parse_double(value, &cfg.channel.eta_path);
    } else if (key == "eta_det") {
      ctx.parse_double(value, &cfg.channel.eta_det);
    } else if (key == "visibility") {
      ctx.parse_double(value, &cfg.channel.visibility);
    } else if (key == "dark_rate") {
      ctx.parse_double(value, &cfg.channel.dark_rate);
    } else if (key == "priors") {
      auto parts = split(value, ',');
      if (parts.size() != 4) {
        ctx.error("priors needs 4 comma-separated values");
      } else {
        for (int i = 0; i < 4; ++i) {
          ctx.parse_double(parts[i], &cfg.channel.priors[i]);
        }
      }
    } else if (key == "stages") {
      int s = 0;
      if (ctx.parse_int(value, &s)) {
        if (s < 4) {
          ctx.error("stages must be >= 4");
        } else {
          cfg.receiver.stages = s;
        }
      }
    } else if (key == "static_prefix") {
      ctx.parse_int(value, &cfg.receiver.static_prefix);
    } else if (key == "cycle") {
      auto parts = split(value, ',');
      if (parts.size() != 4) {
        ctx.error("cycle needs 4 comma-separated values");
      } else {
        for (int i = 0; i < 4; ++i) {
          ctx.parse_int(parts[i], &cfg.receiver.cycle[i]);
        }
      }
    } else if (key == "timing") {
      if (value == "on") {
        timing_on = true;
      } else if (value == "off") {
        timing_on = false;
      } else {
        ctx.error("timing must be on or off");
      }
    } else if (key == "signal_duration") {
      ctx.parse_double(value, &timing.signal_duration);
    } else if (key == "gap_duration") {
      ctx.parse_double(value, &timing.gap_duration);
    } else if (key == "heterodyne_eta") {
      ctx.parse_double(value, &cfg.heterodyne.eta);
    } else if (key == "methods") {
      cfg.methods = split(value, ',');
      for (const auto& m : cfg.methods) {
        if (!kKnownMethods.count(m)) {
          ctx.error("unknown method '" + m + "'");
        }
      }
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "seed") {
      ctx.parse_u64(value, &cfg.seed);
    } else if (key == "trials") {
      ctx.parse_int(value, &cfg.trials);
    } else if (key == "batches") {
      ctx.parse_int(value, &cfg.batches);
    } else if (key == "workers") {
      ctx.parse_int(value, &cfg.workers);
    } else {
      ctx.error("unknown key '" + key + "'");
    }
  }

  if (timing_on) {
    cfg.receiver.timing = timing;
  }
  if (result.issues.empty()) {
    try {
      cfg.validate();
      result.config = cfg;
    } catch (const std::exception& e) {
      result.issues.push_back({0, e.what()});
    }
  }
  return result;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  kv("sweep", sweep_variable_name(config.sweep));
  kv("sweep_from", format_double(config.sweep_from));
  kv("sweep_to", format_double(config.sweep_to));
  kv("sweep_step", format_double(config.sweep_step));
  kv("alpha_sq", format_double(config.channel.alpha_sq));
  kv("eta_path", format_double(config.channel.eta_path));
  kv("eta_det", format_double(config.channel.eta_det));
  kv("visibility", format_double(config.channel.visibility));
  kv("dark_rate", format_double(config.channel.dark_rate));
  kv("priors", format_double(config.channel.priors[0]) + ", " +
                   format_double(config.channel.priors[1]) + ", " +
                   format_double(config.channel.priors[2]) + ", " +
                   format_double(config.channel.priors[3]));
  kv("stages", std::to_string(config.receiver.stages));
  kv("static_prefix", std::to_string(config.receiver.static_prefix));
  kv("cycle", std::to_string(config.receiver.cycle[0]) + ", " +
                  std::to_string(config.receiver.cycle[1]) + ", " +
                  std::to_string(config.receiver.cycle[2]) + ", " +
                  std::to_string(config.receiver.cycle[3]));
  kv("timing", config.receiver.timing ? "on" : "off");
  if (config.receiver.timing) {
    kv("signal_duration", format_double(config.receiver.timing->signal_duration));
    kv("gap_duration", format_double(config.receiver.timing->gap_duration));
  }
  kv("heterodyne_eta", format_double(config.heterodyne.eta));
  std::string methods;
  for (const auto& m : config.methods) {
    if (!methods.empty()) {
      methods += ", ";
    }
    methods += m;
  }
  kv("methods", methods);
  kv("out", config.out);
  kv("seed", std::to_string(config.seed));
  kv("trials", std::to_string(config.trials));
  kv("batches", std::to_string(config.batches));
  kv("workers", std::to_string(config.workers));
  return out;
}

}  // namespace usd
