#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msre/model.hpp"
#include "msre/pipeline.hpp"

namespace msre {

struct Totals {
  double mass_kg = 0.0;
  double power_w = 0.0;
  double cost_m = 0.0;
};

struct Feasibility {
  bool mass = false;
  bool power = false;
  bool cost = false;
  bool reliability = false;
  bool bounds = false;

  bool all() const { return mass && power && cost && reliability && bounds; }
};

struct EvaluationResult {
  Totals totals;
  double reliability = 0.0;
  Feasibility feasible;
};

/// Linear budget sums: total_attr = sum_j attr_j * n_j.
Totals budget_totals(const DesignSpec& spec, const DesignVector& counts);

/// Totals plus R_system of the instantiated design at mission time t,
/// with per-constraint feasibility flags. t < 0 means "use the spec's
/// mission time". With enforce_bounds false, out-of-bound counts are
/// evaluated anyway and only the bounds flag records the violation.
EvaluationResult evaluate_design(const HierarchicalSystem& skeleton,
                                 const DesignVector& counts, double t_hours = -1.0,
                                 bool enforce_bounds = true);

struct SolverConfig {
  enum class Mode { Auto, Exhaustive, Relaxed };
  Mode mode = Mode::Auto;
  std::uint64_t exhaustive_limit = 100000;  // designs
  double step_tolerance = 1e-15;
  int max_iterations = 500;
};

struct TraceRow {
  int iteration = 0;
  std::vector<double> point;
  double reliability = 0.0;
  double step_norm = 0.0;
};

struct OptimizeResult {
  /// False means no feasible design was found; `best` then carries the
  /// least-violating design explored.
  bool feasible_found = false;
  bool exhaustive = false;
  DesignVector best;
  EvaluationResult evaluation;
  std::vector<TraceRow> trace;
};

/// Maximizes R_system under the budget, reliability, and bound constraints.
/// Exhaustive enumeration when the bound box is small enough; otherwise a
/// continuous relaxation with finite-difference gradients, multiplier-free
/// projected ascent (step tolerance and iteration cap as configured),
/// followed by corner rounding and greedy repair.
OptimizeResult optimize(const HierarchicalSystem& skeleton, double t_hours = -1.0,
                        const SolverConfig& config = {});

struct MetricComparison {
  std::string name;
  double budget = 0.0;
  double baseline = 0.0;
  double optimum = 0.0;
  double k_baseline = 0.0;  // baseline / budget
  double k_optimum = 0.0;   // optimum / budget
  double ds1_pct = 0.0;     // (baseline - budget) / budget * 100
  double ds2_pct = 0.0;     // (optimum - budget) / budget * 100
};

struct ComparisonReport {
  std::vector<MetricComparison> metrics;  // mass, power, cost, reliability
};

/// Baseline-vs-optimum comparison against the budgets. Bounds are not
/// enforced here so reference schemes outside the box stay comparable.
ComparisonReport compare_schemes(const HierarchicalSystem& skeleton,
                                 const DesignVector& baseline,
                                 const DesignVector& optimum, double t_hours = -1.0);

std::string comparison_table(const ComparisonReport& report);
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace msre
