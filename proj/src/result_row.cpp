#include "usd/result_row.hpp"

#include <cstdio>

namespace usd {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "# ";
  out += kCsvSchemaVersion;
  out +=
      "\nmethod,alpha_sq,M,eta_path,eta_det,xi,nu,discard_factor,"
      "p_conclusive,p_conclusive_se,p_error,p_error_se,n_trials,seed\n";
  for (const ResultRow& r : rows) {
    out += r.method;
    out += ',';
    append_number(out, r.alpha_sq);
    out += ',';
    out += std::to_string(r.stages);
    out += ',';
    append_number(out, r.eta_path);
    out += ',';
    append_number(out, r.eta_det);
    out += ',';
    append_number(out, r.xi);
    out += ',';
    append_number(out, r.nu);
    out += ',';
    append_number(out, r.discard_factor);
    out += ',';
    append_number(out, r.p_conclusive);
    out += ',';
    append_number(out, r.p_conclusive_se);
    out += ',';
    append_number(out, r.p_error);
    out += ',';
    append_number(out, r.p_error_se);
    out += ',';
    out += std::to_string(r.n_trials);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

}  // namespace usd
