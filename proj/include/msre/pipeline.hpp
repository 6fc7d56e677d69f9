#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msre/bayesnet.hpp"
#include "msre/model.hpp"

namespace msre {

/// How the top-node distribution turns into R_system: either a demand
/// threshold (P[performance >= demand]) or an explicit set of accepted
/// state performances. Default: highest state only.
struct Acceptance {
  std::optional<double> demand;
  std::optional<std::vector<double>> states;

  static Acceptance demand_at_least(double d) { return {d, std::nullopt}; }
  static Acceptance accepted_states(std::vector<double> s) {
    return {std::nullopt, std::move(s)};
  }
};

struct AnalysisResult {
  std::vector<std::pair<double, double>> top_distribution;  // (performance, probability)
  double reliability = 0.0;
};

struct PipelineConfig {
  /// Structure-function-only levels collapsed algebraically before the
  /// network takes over. 2 keeps the algebra at the bottom level only.
  int ugf_levels = 2;
  /// Row cap for any single materialized CPT on the pure-network path.
  std::uint64_t max_cpt_rows = std::uint64_t(1) << 22;
};

/// One composed distribution per level-2 node at mission time t.
std::map<std::string, UFunction> level2_ufunctions(const HierarchicalSystem& system,
                                                   double t_hours);

/// Network over the remaining levels with the given distributions as roots.
BayesianNetwork build_bn(const HierarchicalSystem& system,
                         const std::map<std::string, UFunction>& roots);

/// Hybrid path: algebraic bottom collapse, exact inference above.
AnalysisResult system_reliability_ugfbn(const HierarchicalSystem& system, double t_hours,
                                        const Acceptance& acceptance = {},
                                        const PipelineConfig& config = {});

/// Reference path: every bottom component enters the network as a root and
/// level-2 nodes get materialized one-hot CPTs. Exponential in component
/// count; throws StateSpaceTooLarge past the configured row cap.
AnalysisResult system_reliability_purebn(const HierarchicalSystem& system, double t_hours,
                                         const Acceptance& acceptance = {},
                                         const PipelineConfig& config = {});

/// Performance-value state space of every component and node, in the same
/// canonical order the analysis paths use.
std::map<std::string, std::vector<double>> derive_state_spaces(
    const HierarchicalSystem& system, double t_hours);

double distribution_distance(const std::vector<std::pair<double, double>>& a,
                             const std::vector<std::pair<double, double>>& b);

struct BenchmarkRow {
  int step = 0;
  int components = 0;
  double bn_ms = 0.0;
  double ugfbn_ms = 0.0;
  double ratio = 0.0;
  bool truncated = false;
};

/// Grows the system by `components_per_step` bottom components per step
/// (round-robin duplication under the level-2 nodes), checks that both
/// methods agree, then records median wall-clock over `repetitions` runs
/// with one discarded warm-up.
std::vector<BenchmarkRow> benchmark_scaling(const HierarchicalSystem& base,
                                            int components_per_step, int steps,
                                            double t_hours, const Acceptance& acceptance,
                                            int repetitions,
                                            const PipelineConfig& config = {});

/// CSV with header step,components,bn_ms,ugfbn_ms,ratio,truncated.
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace msre
