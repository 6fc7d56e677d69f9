#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msre/mc.hpp"
#include "msre/model.hpp"
#include "msre/pipeline.hpp"
#include "msre/rbdo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEngine = 3;

std::string num(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8f", value);
  return buf;
}

msre::Acceptance parse_acceptance(const std::optional<double>& demand,
                                  const std::string& accept_csv) {
  if (demand && !accept_csv.empty()) {
    throw CLI::ValidationError("--demand and --accept are mutually exclusive");
  }
  if (demand) return msre::Acceptance::demand_at_least(*demand);
  if (!accept_csv.empty()) {
    std::vector<double> states;
    std::stringstream ss(accept_csv);
    std::string token;
    while (std::getline(ss, token, ',')) states.push_back(std::stod(token));
    return msre::Acceptance::accepted_states(std::move(states));
  }
  return {};
}

void print_distribution(const std::vector<std::pair<double, double>>& dist) {
  for (const auto& [g, p] : dist) {
    std::cout << "  performance " << num(g) << "  probability " << num(p) << "\n";
  }
}

msre::HierarchicalSystem load_validated(const std::string& path) {
  msre::HierarchicalSystem sys = msre::load_model(path);
  auto violations = msre::validate_model(sys);
  if (!violations.empty()) {
    for (const std::string& v : violations) std::cerr << "violation: " << v << "\n";
    throw msre::Error(msre::ErrorCode::InvalidArgument,
                      "model failed validation with " +
                          std::to_string(violations.size()) + " violation(s)");
  }
  return sys;
}

std::vector<int> parse_counts(const std::string& csv) {
  std::vector<int> counts;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) counts.push_back(std::stoi(token));
  return counts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-state reliability engine: u-function algebra at the bottom "
               "levels, exact discrete inference above, plus Monte Carlo "
               "verification and budget-constrained redundancy design"};
  app.require_subcommand(1);

  // validate
  std::string validate_path;
  auto* cmd_validate = app.add_subcommand("validate", "Check a model document");
  cmd_validate->add_option("model", validate_path, "model file")->required();

  // analyze
  std::string analyze_path, analyze_accept, analyze_method = "ugfbn";
  double analyze_time = 0.0;
  std::optional<double> analyze_demand;
  auto* cmd_analyze = app.add_subcommand("analyze", "Top-node distribution and R_system");
  cmd_analyze->add_option("model", analyze_path)->required();
  cmd_analyze->add_option("--time", analyze_time, "mission time, hours")->required();
  cmd_analyze->add_option("--demand", analyze_demand, "demand threshold");
  cmd_analyze->add_option("--accept", analyze_accept, "accepted states, comma separated");
  cmd_analyze->add_option("--method", analyze_method)
      ->check(CLI::IsMember({"ugfbn", "purebn"}));

  // compare
  std::string compare_path;
  double compare_time = 0.0;
  auto* cmd_compare = app.add_subcommand("compare", "Run both methods and compare");
  cmd_compare->add_option("model", compare_path)->required();
  cmd_compare->add_option("--time", compare_time)->required();

  // bench
  std::string bench_path, bench_out;
  double bench_time = 0.0;
  int bench_step = 10, bench_steps = 5, bench_reps = 5;
  auto* cmd_bench = app.add_subcommand("bench", "Scaling benchmark, CSV output");
  cmd_bench->add_option("model", bench_path)->required();
  cmd_bench->add_option("--time", bench_time)->required();
  cmd_bench->add_option("--step", bench_step, "components added per step");
  cmd_bench->add_option("--steps", bench_steps);
  cmd_bench->add_option("--reps", bench_reps);
  cmd_bench->add_option("--out", bench_out, "CSV file")->required();

  // simulate
  std::string sim_path;
  double sim_time = 0.0;
  std::uint64_t sim_trials = 0;
  std::optional<std::uint64_t> sim_seed;
  std::optional<double> sim_demand;
  std::string sim_accept;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimate");
  cmd_sim->add_option("model", sim_path)->required();
  cmd_sim->add_option("--time", sim_time)->required();
  cmd_sim->add_option("--trials", sim_trials)->required();
  cmd_sim->add_option("--seed", sim_seed, "64-bit seed (required; no silent default)");
  cmd_sim->add_option("--demand", sim_demand);
  cmd_sim->add_option("--accept", sim_accept);

  // optimize
  std::string opt_path, opt_out, opt_baseline;
  std::optional<double> opt_time;
  bool opt_exhaustive = false, opt_relaxed = false;
  auto* cmd_opt = app.add_subcommand("optimize", "Budget-constrained redundancy design");
  cmd_opt->add_option("spec", opt_path)->required();
  cmd_opt->add_option("--time", opt_time, "mission time, hours (default: spec value)");
  cmd_opt->add_flag("--exhaustive", opt_exhaustive);
  cmd_opt->add_flag("--relaxed", opt_relaxed);
  cmd_opt->add_option("--baseline", opt_baseline, "comma-separated counts");
  cmd_opt->add_option("--out", opt_out, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_validate->parsed()) {
      msre::HierarchicalSystem sys = msre::load_model(validate_path);
      auto violations = msre::validate_model(sys);
      for (const std::string& v : violations) std::cout << "violation: " << v << "\n";
      if (violations.empty()) {
        std::cout << "ok\n";
        return kExitOk;
      }
      return kExitValidation;
    }

    if (cmd_analyze->parsed()) {
      msre::HierarchicalSystem sys = load_validated(analyze_path);
      const msre::Acceptance acceptance = parse_acceptance(analyze_demand, analyze_accept);
      const msre::AnalysisResult result =
          analyze_method == "purebn"
              ? msre::system_reliability_purebn(sys, analyze_time, acceptance)
              : msre::system_reliability_ugfbn(sys, analyze_time, acceptance);
      std::cout << "top distribution:\n";
      print_distribution(result.top_distribution);
      std::cout << "R_system=" << num(result.reliability) << "\n";
      return kExitOk;
    }

    if (cmd_compare->parsed()) {
      msre::HierarchicalSystem sys = load_validated(compare_path);
      using clock = std::chrono::steady_clock;
      const auto t0 = clock::now();
      const msre::AnalysisResult hybrid = msre::system_reliability_ugfbn(sys, compare_time);
      const auto t1 = clock::now();
      const msre::AnalysisResult pure = msre::system_reliability_purebn(sys, compare_time);
      const auto t2 = clock::now();
      const double diff =
          msre::distribution_distance(hybrid.top_distribution, pure.top_distribution);
      std::cout << "ugfbn distribution:\n";
      print_distribution(hybrid.top_distribution);
      std::cout << "purebn distribution:\n";
      print_distribution(pure.top_distribution);
      std::cout << "max_abs_diff=" << num(diff) << "\n";
      std::cout << "ugfbn_ms="
                << num(std::chrono::duration<double, std::milli>(t1 - t0).count()) << "\n";
      std::cout << "purebn_ms="
                << num(std::chrono::duration<double, std::milli>(t2 - t1).count()) << "\n";
      if (!(diff <= 1e-9)) {
        std::cerr << "error code=MethodMismatch msg=\"distributions differ by " << diff
                  << "\"\n";
        return kExitEngine;
      }
      return kExitOk;
    }

    if (cmd_bench->parsed()) {
      msre::HierarchicalSystem sys = load_validated(bench_path);
      const auto rows =
          msre::benchmark_scaling(sys, bench_step, bench_steps, bench_time, {}, bench_reps);
      std::ofstream out(bench_out);
      if (!out) {
        throw msre::Error(msre::ErrorCode::InvalidArgument,
                          "cannot write '" + bench_out + "'");
      }
      out << msre::benchmark_csv(rows);
      std::cout << msre::benchmark_csv(rows);
      return kExitOk;
    }

    if (cmd_sim->parsed()) {
      if (!sim_seed) {
        std::cerr << "error code=MissingSeed msg=\"simulate requires --seed\"\n";
        return kExitUsage;
      }
      msre::HierarchicalSystem sys = load_validated(sim_path);
      const msre::Acceptance acceptance = parse_acceptance(sim_demand, sim_accept);
      const msre::SimulationResult result =
          msre::simulate(sys, sim_time, sim_trials, *sim_seed, acceptance);
      std::cout << "frequencies:\n";
      print_distribution(result.frequencies);
      std::cout << "R_estimate=" << num(result.estimate) << "\n";
      std::cout << "std_error=" << num(result.std_error) << "\n";
      return kExitOk;
    }

    if (cmd_opt->parsed()) {
      msre::HierarchicalSystem sys = load_validated(opt_path);
      msre::SolverConfig config;
      if (opt_exhaustive && opt_relaxed) {
        std::cerr << "error code=Usage msg=\"--exhaustive and --relaxed conflict\"\n";
        return kExitUsage;
      }
      if (opt_exhaustive) config.mode = msre::SolverConfig::Mode::Exhaustive;
      if (opt_relaxed) config.mode = msre::SolverConfig::Mode::Relaxed;
      const double t = opt_time.value_or(-1.0);
      const msre::OptimizeResult result = msre::optimize(sys, t, config);

      std::ostringstream report;
      report << "feasible=" << (result.feasible_found ? "true" : "false") << "\n";
      report << "strategy=" << (result.exhaustive ? "exhaustive" : "relaxed") << "\n";
      report << "design=";
      for (std::size_t j = 0; j < result.best.counts.size(); ++j) {
        if (j) report << ',';
        report << result.best.counts[j];
      }
      report << "\n";
      report << "M_sum=" << num(result.evaluation.totals.mass_kg) << "\n";
      report << "Po_sum=" << num(result.evaluation.totals.power_w) << "\n";
      report << "Dc_sum=" << num(result.evaluation.totals.cost_m) << "\n";
      report << "R_system=" << num(result.evaluation.reliability) << "\n";
      const auto& f = result.evaluation.feasible;
      report << "feasible_mass=" << f.mass << " feasible_power=" << f.power
             << " feasible_cost=" << f.cost << " feasible_reliability=" << f.reliability
             << " feasible_bounds=" << f.bounds << "\n";

      std::vector<int> baseline = parse_counts(opt_baseline);
      if (baseline.empty() && sys.design && !sys.design->baseline.empty()) {
        baseline = sys.design->baseline;
      }
      if (!baseline.empty()) {
        const msre::ComparisonReport cmp =
            msre::compare_schemes(sys, {baseline}, result.best, t);
        report << msre::comparison_table(cmp);
      }
      report << "trace:\n" << msre::trace_csv(result.trace);

      std::ofstream out(opt_out);
      if (!out) {
        throw msre::Error(msre::ErrorCode::InvalidArgument,
                          "cannot write '" + opt_out + "'");
      }
      out << report.str();
      std::cout << report.str();
      return result.feasible_found ? kExitOk : kExitEngine;
    }
  } catch (const msre::Error& e) {
    if (e.code() == msre::ErrorCode::InvalidArgument &&
        std::string(e.what()).find("failed validation") != std::string::npos) {
      std::cerr << "error code=" << msre::error_code_name(e.code()) << " msg=\"" << e.what()
                << "\"\n";
      return kExitValidation;
    }
    std::cerr << "error code=" << msre::error_code_name(e.code()) << " msg=\"" << e.what()
              << "\"\n";
    return kExitEngine;
  } catch (const std::exception& e) {
    std::cerr << "error code=Unexpected msg=\"" << e.what() << "\"\n";
    return kExitEngine;
  }
  return kExitUsage;
}
