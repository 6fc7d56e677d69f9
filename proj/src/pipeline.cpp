#include "msre/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace msre {

namespace {

std::vector<NodeSpec> nodes_in_level_order(const HierarchicalSystem& sys) {
  std::vector<NodeSpec> ordered = sys.nodes;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const NodeSpec& a, const NodeSpec& b) { return a.level < b.level; });
  return ordered;
}

/// Collapses every structure-function node at level <= ugf_levels whose
/// inputs are already collapsed, starting from the bottom components.
std::map<std::string, UFunction> collapse_levels(const HierarchicalSystem& sys,
                                                 double t_hours, int ugf_levels) {
  std::map<std::string, UFunction> collapsed;
  for (const NodeSpec& node : nodes_in_level_order(sys)) {
    if (node.level > ugf_levels || !node.structure) continue;
    std::vector<UFunction> inputs;
    bool ready = true;
    for (const std::string& parent : node.parents) {
      if (node.level == 2) {
        const ComponentSpec* comp = sys.find_component(parent);
        if (!comp) {
          throw Error(ErrorCode::UnknownReference,
                      "level-2 node '" + node.id + "' references unknown component '" +
                          parent + "'");
        }
        inputs.push_back(component_ufunction(*comp, t_hours));
      } else {
        auto it = collapsed.find(parent);
        if (it == collapsed.end()) {
          ready = false;
          break;
        }
        inputs.push_back(it->second);
      }
    }
    if (ready) collapsed[node.id] = compose(inputs, *node.structure);
  }
  return collapsed;
}

Cpt root_cpt(const UFunction& u) {
  Cpt cpt;
  std::vector<double> row;
  for (const Term& t : u.terms()) {
    cpt.child_states.push_back(t.performance);
    row.push_back(t.probability);
  }
  cpt.rows.push_back(std::move(row));
  return cpt;
}

void add_interior_node(BayesianNetwork& net, const HierarchicalSystem& sys,
                       const NodeSpec& node) {
  std::vector<DiscreteNode> parents;
  for (const std::string& parent : node.parents) parents.push_back(net.node(parent));
  if (node.structure) {
    Cpt cpt = deterministic_cpt(*node.structure, parents);
    DiscreteNode dn{node.id, cpt.child_states};
    net.add_node(std::move(dn), std::move(cpt));
    return;
  }
  if (!node.cpt) {
    throw Error(ErrorCode::InvalidArgument,
                "node '" + node.id + "' has neither structure function nor CPT");
  }
  const CptSpec& spec = *node.cpt;
  std::uint64_t expected_rows = 1;
  for (const DiscreteNode& p : parents) expected_rows *= p.state_values.size();
  if (spec.rows.size() != expected_rows) {
    throw Error(ErrorCode::StateMismatch,
                "cpt of '" + node.id + "' has " + std::to_string(spec.rows.size()) +
                    " rows but the derived parent states require " +
                    std::to_string(expected_rows));
  }
  Cpt cpt;
  cpt.parent_order = node.parents;
  cpt.child_states = spec.states;
  cpt.rows.resize(expected_rows);
  for (const CptSpec::Row& row : spec.rows) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < row.parent_states.size(); ++j) {
      const int card = static_cast<int>(parents[j].state_values.size());
      if (row.parent_states[j] < 0 || row.parent_states[j] >= card) {
        throw Error(ErrorCode::StateMismatch,
                    "cpt of '" + node.id + "' indexes parent state " +
                        std::to_string(row.parent_states[j]) + " but parent '" +
                        node.parents[j] + "' has " + std::to_string(card) + " states");
      }
      index = index * card + row.parent_states[j];
    }
    cpt.rows[index] = row.probabilities;
  }
  DiscreteNode dn{node.id, spec.states};
  net.add_node(std::move(dn), std::move(cpt));
}

AnalysisResult finish(const BayesianNetwork& net, const std::string& top,
                      const Acceptance& acceptance) {
  const std::vector<double> marginal = net.marginal(top);
  const std::vector<double>& states = net.node(top).state_values;
  AnalysisResult result;
  for (std::size_t i = 0; i < states.size(); ++i) {
    result.top_distribution.emplace_back(states[i], marginal[i]);
  }
  if (acceptance.demand) {
    for (const auto& [g, p] : result.top_distribution) {
      if (g >= *acceptance.demand - kPerformanceTolerance) result.reliability += p;
    }
  } else if (acceptance.states) {
    for (const auto& [g, p] : result.top_distribution) {
      for (double accepted : *acceptance.states) {
        if (std::abs(g - accepted) <= kPerformanceTolerance) {
          result.reliability += p;
          break;
        }
      }
    }
  } else {
    result.reliability = result.top_distribution.back().second;
  }
  result.reliability = std::min(result.reliability, 1.0);
  return result;
}

}  // namespace

std::map<std::string, UFunction> level2_ufunctions(const HierarchicalSystem& sys,
                                                   double t_hours) {
  return collapse_levels(sys, t_hours, 2);
}

BayesianNetwork build_bn(const HierarchicalSystem& sys,
                         const std::map<std::string, UFunction>& roots) {
  BayesianNetwork net;
  // Frontier roots: collapsed nodes that feed a node outside the map (or
  // the top itself when everything collapsed).
  std::set<std::string> needed;
  for (const NodeSpec& node : sys.nodes) {
    if (roots.count(node.id)) continue;
    for (const std::string& parent : node.parents) {
      if (roots.count(parent)) needed.insert(parent);
    }
  }
  const std::string top_id = sys.top_node().id;
  if (roots.count(top_id)) needed.insert(top_id);

  for (const NodeSpec& node : nodes_in_level_order(sys)) {
    auto it = roots.find(node.id);
    if (it != roots.end()) {
      if (!needed.count(node.id)) continue;
      Cpt cpt = root_cpt(it->second);
      DiscreteNode dn{node.id, cpt.child_states};
      net.add_node(std::move(dn), std::move(cpt));
      continue;
    }
    bool available = true;
    for (const std::string& parent : node.parents) {
      if (!net.has_node(parent)) {
        available = false;
        break;
      }
    }
    if (available) add_interior_node(net, sys, node);
  }
  return net;
}

AnalysisResult system_reliability_ugfbn(const HierarchicalSystem& sys, double t_hours,
                                        const Acceptance& acceptance,
                                        const PipelineConfig& config) {
  const auto collapsed = collapse_levels(sys, t_hours, std::max(config.ugf_levels, 2));
  const std::string top_id = sys.top_node().id;
  if (collapsed.count(top_id)) {
    // fully algebraic system: the top distribution is already at hand
    const UFunction& u = collapsed.at(top_id);
    BayesianNetwork net;
    Cpt cpt = root_cpt(u);
    DiscreteNode dn{top_id, cpt.child_states};
    net.add_node(std::move(dn), std::move(cpt));
    return finish(net, top_id, acceptance);
  }
  BayesianNetwork net = build_bn(sys, collapsed);
  return finish(net, top_id, acceptance);
}

AnalysisResult system_reliability_purebn(const HierarchicalSystem& sys, double t_hours,
                                         const Acceptance& acceptance,
                                         const PipelineConfig& config) {
  BayesianNetwork net;
  for (const ComponentSpec& comp : sys.components) {
    Cpt cpt = root_cpt(component_ufunction(comp, t_hours));
    DiscreteNode dn{comp.id, cpt.child_states};
    net.add_node(std::move(dn), std::move(cpt));
  }
  for (const NodeSpec& node : nodes_in_level_order(sys)) {
    bool available = true;
    std::uint64_t rows = 1;
    for (const std::string& parent : node.parents) {
      if (!net.has_node(parent)) {
        available = false;
        break;
      }
      rows *= net.node(parent).state_values.size();
      if (rows > config.max_cpt_rows) {
        throw Error(ErrorCode::StateSpaceTooLarge,
                    "cpt of '" + node.id + "' would need more than " +
                        std::to_string(config.max_cpt_rows) + " rows");
      }
    }
    if (available) add_interior_node(net, sys, node);
  }
  return finish(net, sys.top_node().id, acceptance);
}

std::map<std::string, std::vector<double>> derive_state_spaces(
    const HierarchicalSystem& sys, double t_hours) {
  std::map<std::string, std::vector<double>> spaces;
  for (const ComponentSpec& comp : sys.components) {
    std::vector<double> states;
    const UFunction u = component_ufunction(comp, t_hours);
    for (const Term& t : u.terms()) states.push_back(t.performance);
    spaces[comp.id] = states;
  }
  for (const NodeSpec& node : nodes_in_level_order(sys)) {
    if (node.cpt) {
      spaces[node.id] = node.cpt->states;
      continue;
    }
    if (!node.structure) continue;
    std::vector<std::vector<double>> parent_states;
    for (const std::string& parent : node.parents) {
      parent_states.push_back(spaces.at(parent));
    }
    std::set<double> outputs;
    std::vector<std::size_t> idx(parent_states.size(), 0);
    std::vector<double> tuple(parent_states.size());
    for (;;) {
      for (std::size_t j = 0; j < parent_states.size(); ++j) {
        tuple[j] = parent_states[j][idx[j]];
      }
      outputs.insert(node.structure->apply(tuple));
      std::size_t j = parent_states.size();
      bool done = true;
      while (j > 0) {
        --j;
        if (++idx[j] < parent_states[j].size()) {
          done = false;
          break;
        }
        idx[j] = 0;
      }
      if (done) break;
    }
    std::vector<double> states;
    for (double v : outputs) {
      if (states.empty() || v - states.back() > kPerformanceTolerance) states.push_back(v);
    }
    spaces[node.id] = states;
  }
  return spaces;
}

double distribution_distance(const std::vector<std::pair<double, double>>& a,
                             const std::vector<std::pair<double, double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double max_diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].first - b[i].first) > kPerformanceTolerance) {
      return std::numeric_limits<double>::infinity();
    }
    max_diff = std::max(max_diff, std::abs(a[i].second - b[i].second));
  }
  return max_diff;
}

namespace {

HierarchicalSystem grow_system(HierarchicalSystem sys, int added) {
  std::vector<NodeSpec*> targets;
  for (NodeSpec& node : sys.nodes) {
    if (node.level == 2 && node.structure &&
        node.structure->kind() != StructureKind::Custom) {
      targets.push_back(&node);
    }
  }
  if (targets.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "benchmark base system has no growable level-2 nodes");
  }
  for (int i = 0; i < added; ++i) {
    NodeSpec* node = targets[i % targets.size()];
    const ComponentSpec* prototype = sys.find_component(node->parents.back());
    ComponentSpec clone = *prototype;
    clone.id = prototype->id + "_g" + std::to_string(i + 1);
    node->parents.push_back(clone.id);
    sys.components.push_back(std::move(clone));
  }
  return sys;
}

template <typename F>
double median_ms(F&& run, int repetitions) {
  run();  // warm-up, discarded
  std::vector<double> times;
  times.reserve(repetitions);
  for (int r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    run();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

}  // namespace

std::vector<BenchmarkRow> benchmark_scaling(const HierarchicalSystem& base,
                                            int components_per_step, int steps,
                                            double t_hours, const Acceptance& acceptance,
                                            int repetitions,
                                            const PipelineConfig& config) {
  if (steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "benchmark needs at least one step");
  }
  if (components_per_step < 1) {
    throw Error(ErrorCode::InvalidArgument, "benchmark step size must be positive");
  }
  if (repetitions < 1) {
    throw Error(ErrorCode::InvalidArgument, "benchmark needs at least one repetition");
  }
  std::vector<BenchmarkRow> rows;
  for (int step = 1; step <= steps; ++step) {
    HierarchicalSystem sys = grow_system(base, components_per_step * step);
    BenchmarkRow row;
    row.step = step;
    row.components = static_cast<int>(sys.components.size());

    const AnalysisResult hybrid = system_reliability_ugfbn(sys, t_hours, acceptance, config);
    bool truncated = false;
    try {
      const AnalysisResult pure =
          system_reliability_purebn(sys, t_hours, acceptance, config);
      const double diff = distribution_distance(hybrid.top_distribution, pure.top_distribution);
      if (!(diff <= 1e-9)) {
        std::ostringstream msg;
        msg << "method disagreement at step " << step << ": max abs diff " << diff;
        throw Error(ErrorCode::InvalidArgument, msg.str());
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StateSpaceTooLarge) throw;
      truncated = true;
    }

    row.ugfbn_ms = median_ms(
        [&] { system_reliability_ugfbn(sys, t_hours, acceptance, config); }, repetitions);
    if (!truncated) {
      row.bn_ms = median_ms(
          [&] { system_reliability_purebn(sys, t_hours, acceptance, config); }, repetitions);
      row.ratio = row.ugfbn_ms > 0.0 ? row.bn_ms / row.ugfbn_ms : 0.0;
    }
    row.truncated = truncated;
    rows.push_back(row);
  }
  return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "step,components,bn_ms,ugfbn_ms,ratio,truncated\n";
  out.setf(std::ios::fixed);
  out.precision(8);
  for (const BenchmarkRow& row : rows) {
    out << row.step << ',' << row.components << ',' << row.bn_ms << ',' << row.ugfbn_ms
        << ',' << row.ratio << ',' << (row.truncated ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace msre
