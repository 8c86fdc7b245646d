#include <cstdint>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "usd/bounds.hpp"
#include "usd/config.hpp"
#include "usd/presets.hpp"
#include "usd/receiver.hpp"
#include "usd/result_row.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

void write_json_summary(const std::string& path,
                        const std::vector<usd::ResultRow>& rows) {
  nlohmann::json summary;
  summary["schema"] = usd::kCsvSchemaVersion;
  summary["rows"] = rows.size();
  std::map<std::string, int> methods;
  for (const auto& row : rows) {
    ++methods[row.method];
  }
  summary["rows_per_method"] = methods;
  write_file(path, summary.dump(2) + "\n");
}

// "from:to:step"
bool parse_range(const std::string& text, double* from, double* to,
                 double* step) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(ss, part, ':')) {
    try {
      values.push_back(std::stod(part));
    } catch (const std::exception&) {
      return false;
    }
  }
  if (values.size() != 3 || values[2] <= 0.0) {
    return false;
  }
  *from = values[0];
  *to = values[1];
  *step = values[2];
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for unambiguous discrimination of QPSK coherent "
               "states: photon-counting receivers, heterodyne baseline and "
               "the optimal bound"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int trials = 24000;
  int batches = 5;
  int workers = 1;
  std::string out = "results.csv";
  std::string json_out;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed for Monte Carlo methods");
    cmd->add_option("--trials", trials, "Trials per batch");
    cmd->add_option("--batches", batches, "Number of batches");
    cmd->add_option("--workers", workers,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--out", out, "Output file path");
    cmd->add_option("--json", json_out, "Optional JSON summary path");
  };

  std::string preset_name;
  auto* preset_cmd =
      app.add_subcommand("preset", "Run a canned experiment preset");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  add_common(preset_cmd);

  std::string config_path;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run a sweep described by a config file");
  sweep_cmd->add_option("config", config_path, "Config file path")->required();
  add_common(sweep_cmd);

  std::string alpha_range = "0.1:5.0:0.1";
  auto* bound_cmd =
      app.add_subcommand("bound", "Tabulate the optimal conclusive bound");
  bound_cmd->add_option("--alpha-sq-range", alpha_range,
                        "Mean photon number range, from:to:step");
  add_common(bound_cmd);

  int lut_stages = 10;
  auto* lut_cmd =
      app.add_subcommand("lut", "Export the adaptive feedback lookup table");
  lut_cmd->add_option("--stages", lut_stages, "Stage count M")->required();
  add_common(lut_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset_cmd->parsed()) {
      usd::RunOptions options{seed, trials, batches, workers};
      std::vector<usd::ResultRow> rows;
      try {
        rows = usd::run_preset(preset_name, options);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
      }
      write_file(out, usd::to_csv(rows));
      if (!json_out.empty()) {
        write_json_summary(json_out, rows);
      }
      std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    } else if (sweep_cmd->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config file '" << config_path
                  << "'\n";
        return kExitValidation;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      usd::ParseResult parsed = usd::parse_config(buffer.str());
      if (!parsed.config) {
        for (const auto& issue : parsed.issues) {
          std::cerr << config_path << ":" << issue.line << ": "
                    << issue.message << "\n";
        }
        return kExitValidation;
      }
      usd::ExperimentConfig cfg = *parsed.config;
      // Command-line flags override the file where given.
      if (sweep_cmd->count("--seed")) cfg.seed = seed;
      if (sweep_cmd->count("--trials")) cfg.trials = trials;
      if (sweep_cmd->count("--batches")) cfg.batches = batches;
      if (sweep_cmd->count("--workers")) cfg.workers = workers;
      if (sweep_cmd->count("--out")) cfg.out = out;
      std::vector<usd::ResultRow> rows = usd::run_sweep(cfg);
      write_file(cfg.out, usd::to_csv(rows));
      if (!json_out.empty()) {
        write_json_summary(json_out, rows);
      }
      std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
    } else if (bound_cmd->parsed()) {
      double from = 0.0, to = 0.0, step = 0.0;
      if (!parse_range(alpha_range, &from, &to, &step)) {
        std::cerr << "error: --alpha-sq-range must be from:to:step with "
                     "step > 0\n";
        return kExitValidation;
      }
      std::vector<usd::ResultRow> rows;
      for (double a2 = from; a2 <= to + 1e-9; a2 += step) {
        usd::ResultRow row;
        row.method = "bound";
        row.alpha_sq = a2;
        row.p_conclusive =
            usd::optimal_conclusive_probability({.alpha_sq = a2});
        row.seed = seed;
        rows.push_back(row);
      }
      write_file(out, usd::to_csv(rows));
      std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    } else if (lut_cmd->parsed()) {
      usd::ReceiverConfig config;
      config.stages = lut_stages;
      usd::LookupTable table;
      try {
        table = usd::build_lookup_table(config);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
      }
      std::string text = usd::format_lookup_table(table);
      if (lut_cmd->count("--out")) {
        write_file(out, text);
        std::cout << "wrote " << table.entries.size() << " entries to " << out
                  << "\n";
      } else {
        std::cout << text;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
