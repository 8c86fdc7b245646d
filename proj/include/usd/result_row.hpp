#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace usd {

// One output record per (method, sweep point). For ratio methods the
// p_error column carries the ratio itself.
struct ResultRow {
  std::string method;
  double alpha_sq = 0.0;
  int stages = 0;
  double eta_path = 1.0;
  double eta_det = 1.0;
  double xi = 1.0;
  double nu = 0.0;
  double discard_factor = 1.0;
  double p_conclusive = 0.0;
  double p_conclusive_se = 0.0;
  double p_error = 0.0;
  double p_error_se = 0.0;
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvSchemaVersion = "usd_results_v1";

// First line is "# <schema version>", second the header with the exact field
// names, then one comma-separated row per record. UTF-8, LF endings, numbers
// printed with up to 17 significant digits so output is byte-stable.
std::string to_csv(const std::vector<ResultRow>& rows);

}  // namespace usd
