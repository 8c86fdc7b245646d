#include "usd/presets.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "usd/bounds.hpp"
#include "usd/engine.hpp"
#include "usd/heterodyne.hpp"
#include "usd/receiver.hpp"

namespace usd {

namespace {

// Shared fixed parameters of the experimental configuration: 91% path
// transmittance, 73% detector efficiency, 60 us signal with 0.3 us guard
// intervals between time bins.
constexpr double kEtaPath = 0.91;
constexpr double kEtaDet = 0.73;
constexpr TimingModel kTiming{60.0, 0.3};

struct Point {
  ChannelParams channel;
  ReceiverConfig receiver;
  double heterodyne_eta = 1.0;
};

ResultRow base_row(const Point& pt, const RunOptions& opt) {
  ResultRow row;
  row.alpha_sq = pt.channel.alpha_sq;
  row.stages = pt.receiver.stages;
  row.eta_path = pt.channel.eta_path;
  row.eta_det = pt.channel.eta_det;
  row.xi = pt.channel.visibility;
  row.nu = pt.channel.dark_rate;
  row.discard_factor = pt.receiver.timing
                           ? discard_factor(pt.receiver.stages,
                                            *pt.receiver.timing)
                           : 1.0;
  row.seed = opt.seed;
  return row;
}

ResultRow eval_bound(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "bound";
  row.stages = 0;
  row.p_conclusive =
      optimal_conclusive_probability({.alpha_sq = pt.channel.alpha_sq});
  return row;
}

ResultRow eval_static_closed_form(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "static_closed_form";
  row.stages = 4;
  ReceiverConfig four = pt.receiver;
  four.stages = 4;
  row.discard_factor =
      four.timing ? discard_factor(4, *four.timing) : 1.0;
  UsdPerformance perf = static_closed_form(
      pt.channel, four.effective_alpha_sq(pt.channel.alpha_sq));
  row.p_conclusive = perf.p_conclusive;
  row.p_error = perf.p_error;
  return row;
}

ResultRow eval_adaptive_enum(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "adaptive_enum";
  UsdPerformance perf = enumerate_exact(pt.channel, pt.receiver);
  row.p_conclusive = perf.p_conclusive;
  row.p_error = perf.p_error;
  return row;
}

ResultRow eval_adaptive_mc(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "adaptive_mc";
  RunPlan plan;
  plan.master_seed = opt.seed;
  plan.n_trials = opt.trials;
  plan.n_batches = opt.batches;
  plan.workers = opt.workers;
  plan.strategy = Strategy::kAdaptive;
  plan.channel = pt.channel;
  plan.receiver = pt.receiver;
  PerformanceEstimate est = estimate(plan);
  row.p_conclusive = est.p_conclusive;
  row.p_conclusive_se = est.p_conclusive_se;
  row.p_error = est.p_error;
  row.p_error_se = est.p_error_se;
  row.n_trials = est.total_trials;
  return row;
}

// Photon-receiver conclusive probability used as the matching target; exact
// enumeration when feasible, Monte Carlo above the enumeration cap.
UsdPerformance photon_performance(const Point& pt, const RunOptions& opt) {
  if (pt.receiver.stages <= 20) {
    return enumerate_exact(pt.channel, pt.receiver);
  }
  RunPlan plan;
  plan.master_seed = opt.seed;
  plan.n_trials = opt.trials;
  plan.n_batches = opt.batches;
  plan.workers = opt.workers;
  plan.strategy = Strategy::kAdaptive;
  plan.channel = pt.channel;
  plan.receiver = pt.receiver;
  PerformanceEstimate est = estimate(plan);
  return {est.p_conclusive, est.p_error};
}

ResultRow eval_heterodyne_matched(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "heterodyne_matched";
  UsdPerformance photon = photon_performance(pt, opt);
  HeterodyneModel model;
  model.eta = pt.heterodyne_eta;
  if (photon.p_conclusive <= 0.0) {
    row.p_conclusive = 0.0;
    row.p_error = 0.0;
    return row;
  }
  model.threshold = match_threshold(photon.p_conclusive, pt.channel.alpha_sq,
                                    model.eta);
  row.p_conclusive = conclusive_probability(model, pt.channel.alpha_sq);
  row.p_error = error_probability(model, pt.channel.alpha_sq);
  return row;
}

// Photon error divided by matched-heterodyne error; the ratio lands in the
// p_error column, the matched conclusive probability in p_conclusive.
ResultRow eval_error_ratio(const Point& pt, const RunOptions& opt) {
  ResultRow row = base_row(pt, opt);
  row.method = "error_ratio";
  UsdPerformance photon = photon_performance(pt, opt);
  HeterodyneModel model;
  model.eta = pt.heterodyne_eta;
  model.threshold = match_threshold(photon.p_conclusive, pt.channel.alpha_sq,
                                    model.eta);
  double het_error = error_probability(model, pt.channel.alpha_sq);
  row.p_conclusive = photon.p_conclusive;
  row.p_error = het_error > 0.0 ? photon.p_error / het_error : 0.0;
  return row;
}

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> values;
  for (double v = from; v <= to + 1e-9; v += step) {
    values.push_back(v);
  }
  return values;
}

Point ideal_point(double alpha_sq, int stages) {
  Point pt;
  pt.channel.alpha_sq = alpha_sq;
  pt.channel.eta_path = 1.0;
  pt.channel.eta_det = 1.0;
  pt.channel.visibility = 1.0;
  pt.channel.dark_rate = 0.0;
  pt.receiver.stages = stages;
  return pt;
}

Point experimental_point(double alpha_sq, int stages, double xi, double nu) {
  Point pt;
  pt.channel.alpha_sq = alpha_sq;
  pt.channel.eta_path = kEtaPath;
  pt.channel.eta_det = kEtaDet;
  pt.channel.visibility = xi;
  pt.channel.dark_rate = nu;
  pt.receiver.stages = stages;
  pt.receiver.timing = kTiming;
  return pt;
}

// Conclusive probabilities under ideal efficiency, for the visibility and
// dark-count grid xi in {1, 0.998, 0.996, 0.994}, nu = 1e-3 (except the
// ideal curve), M in {4, 10} plus a 100-stage Monte Carlo curve.
std::vector<ResultRow> preset_fig2a(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : grid(0.2, 5.0, 0.2)) {
    rows.push_back(eval_bound(ideal_point(a2, 4), opt));
    rows.push_back(eval_static_closed_form(ideal_point(a2, 4), opt));
    rows.push_back(eval_adaptive_enum(ideal_point(a2, 10), opt));
    rows.push_back(eval_adaptive_mc(ideal_point(a2, 100), opt));
    for (double xi : {0.998, 0.996, 0.994}) {
      Point p4 = ideal_point(a2, 4);
      p4.channel.visibility = xi;
      p4.channel.dark_rate = 1e-3;
      rows.push_back(eval_static_closed_form(p4, opt));
      Point p10 = ideal_point(a2, 10);
      p10.channel.visibility = xi;
      p10.channel.dark_rate = 1e-3;
      rows.push_back(eval_adaptive_enum(p10, opt));
    }
  }
  return rows;
}

std::vector<ResultRow> preset_fig2b(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : grid(0.2, 5.0, 0.2)) {
    for (double xi : {1.0, 0.998, 0.996, 0.994}) {
      Point p4 = ideal_point(a2, 4);
      p4.channel.visibility = xi;
      p4.channel.dark_rate = 1e-3;
      rows.push_back(eval_static_closed_form(p4, opt));
      Point p10 = ideal_point(a2, 10);
      p10.channel.visibility = xi;
      p10.channel.dark_rate = 1e-3;
      rows.push_back(eval_adaptive_enum(p10, opt));
    }
  }
  return rows;
}

// Conclusive probabilities under the experimental conditions (xi = 0.994,
// nu = 1.5e-3, discarding loss) with ideal-SPD and fully ideal references.
std::vector<ResultRow> preset_fig4(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : grid(0.25, 5.0, 0.25)) {
    rows.push_back(eval_bound(ideal_point(a2, 4), opt));
    for (int stages : {4, 10}) {
      Point exp_pt = experimental_point(a2, stages, 0.994, 1.5e-3);
      rows.push_back(eval_adaptive_enum(exp_pt, opt));
      rows.push_back(eval_adaptive_mc(exp_pt, opt));
      Point ideal_spd = exp_pt;
      ideal_spd.channel.eta_det = 1.0;
      rows.push_back(eval_adaptive_enum(ideal_spd, opt));
      rows.push_back(eval_adaptive_enum(ideal_point(a2, stages), opt));
    }
  }
  return rows;
}

// Error probabilities under the experimental conditions, with the matched
// heterodyne baseline, in the small mean-photon-number regime.
std::vector<ResultRow> preset_fig5(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : grid(0.2, 3.0, 0.2)) {
    for (int stages : {4, 10}) {
      Point pt = experimental_point(a2, stages, 0.994, 1.5e-3);
      rows.push_back(eval_adaptive_enum(pt, opt));
      rows.push_back(eval_adaptive_mc(pt, opt));
      rows.push_back(eval_heterodyne_matched(pt, opt));
    }
  }
  return rows;
}

// Performance versus stage count at fixed mean photon numbers 1.5 and 3.0
// (xi = 0.9955, nu = 1.5e-3, discarding loss grows with the stage count).
std::vector<ResultRow> preset_fig6(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : {1.5, 3.0}) {
    for (int stages = 4; stages <= 15; ++stages) {
      Point pt = experimental_point(a2, stages, 0.9955, 1.5e-3);
      rows.push_back(eval_adaptive_enum(pt, opt));
      rows.push_back(eval_adaptive_mc(pt, opt));
      rows.push_back(eval_heterodyne_matched(pt, opt));
    }
  }
  return rows;
}

// Photon/heterodyne error ratio versus detector efficiency at fixed path
// transmittance 0.91.
std::vector<ResultRow> preset_fig7a(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double a2 : {1.5, 3.0}) {
    for (int stages : {4, 10}) {
      for (double eta_det : grid(0.5, 1.0, 0.025)) {
        Point pt = experimental_point(a2, stages, 0.994, 1.5e-3);
        pt.channel.eta_det = eta_det;
        rows.push_back(eval_error_ratio(pt, opt));
      }
    }
  }
  return rows;
}

// Photon/heterodyne error ratio versus mean photon number for the
// experimental (0.73) and ideal (1.0) detector efficiencies.
std::vector<ResultRow> preset_fig7b(const RunOptions& opt) {
  std::vector<ResultRow> rows;
  for (double eta_det : {0.73, 1.0}) {
    for (int stages : {4, 10}) {
      for (double a2 : grid(0.5, 5.0, 0.25)) {
        Point pt = experimental_point(a2, stages, 0.994, 1.5e-3);
        pt.channel.eta_det = eta_det;
        rows.push_back(eval_error_ratio(pt, opt));
      }
    }
  }
  return rows;
}

using PresetFn = std::vector<ResultRow> (*)(const RunOptions&);

const std::map<std::string, PresetFn>& preset_registry() {
  static const std::map<std::string, PresetFn> registry = {
      {"fig2a", preset_fig2a}, {"fig2b", preset_fig2b},
      {"fig4", preset_fig4},   {"fig5", preset_fig5},
      {"fig6", preset_fig6},   {"fig7a", preset_fig7a},
      {"fig7b", preset_fig7b},
  };
  return registry;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : preset_registry()) {
    names.push_back(name);
  }
  return names;
}

std::vector<ResultRow> run_preset(const std::string& name,
                                  const RunOptions& options) {
  auto it = preset_registry().find(name);
  if (it == preset_registry().end()) {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return it->second(options);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  RunOptions opt;
  opt.seed = config.seed;
  opt.trials = config.trials;
  opt.batches = config.batches;
  opt.workers = config.workers;

  std::vector<ResultRow> rows;
  for (double v = config.sweep_from; v <= config.sweep_to + 1e-9;
       v += config.sweep_step) {
    Point pt;
    pt.channel = config.channel;
    pt.receiver = config.receiver;
    pt.heterodyne_eta = config.heterodyne.eta;
    switch (config.sweep) {
      case SweepVariable::kAlphaSq:
        pt.channel.alpha_sq = v;
        break;
      case SweepVariable::kStages:
        pt.receiver.stages = static_cast<int>(std::lround(v));
        break;
      case SweepVariable::kEtaDet:
        pt.channel.eta_det = v;
        break;
    }
    for (const std::string& method : config.methods) {
      if (method == "bound") {
        rows.push_back(eval_bound(pt, opt));
      } else if (method == "static_closed_form") {
        rows.push_back(eval_static_closed_form(pt, opt));
      } else if (method == "adaptive_enum") {
        rows.push_back(eval_adaptive_enum(pt, opt));
      } else if (method == "adaptive_mc") {
        rows.push_back(eval_adaptive_mc(pt, opt));
      } else if (method == "heterodyne_matched") {
        rows.push_back(eval_heterodyne_matched(pt, opt));
      } else {
        throw std::invalid_argument("unknown method '" + method + "'");
      }
    }
  }
  return rows;
}

}  // namespace usd
