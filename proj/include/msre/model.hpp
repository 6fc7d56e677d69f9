#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msre/errors.hpp"
#include "msre/lifetime.hpp"
#include "msre/ugf.hpp"

namespace msre {

/// Bottom-level component: either an explicit discrete distribution or an
/// exponential lifetime (binary at evaluation time).
struct ComponentSpec {
  std::string id;
  std::vector<double> performances;
  std::vector<double> probabilities;
  std::optional<ExponentialLifetime> lifetime;
  double lambda_e6 = 0.0;  // rate as written, in 1e-6 per hour

  bool is_lifetime() const { return lifetime.has_value(); }
};

/// Stochastic CPT as written in a model document. Row inputs are parent
/// state indices (0-based, ascending performance); rows must cover the
/// full Cartesian product.
struct CptSpec {
  std::vector<double> states;  // child performance values, ascending
  struct Row {
    std::vector<int> parent_states;
    std::vector<double> probabilities;
  };
  std::vector<Row> rows;
};

/// Subsystem node: level >= 2, parents one level below, and either a
/// structure function or an explicit CPT.
struct NodeSpec {
  std::string id;
  int level = 0;
  std::vector<std::string> parents;
  std::optional<StructureFunction> structure;
  std::optional<CptSpec> cpt;
};

struct Budgets {
  double mass_kg = 0.0;
  double power_w = 0.0;
  double cost_m = 0.0;
  double reliability = 0.0;
};

struct DesignUnit {
  std::string id;
  double mass_kg = 0.0;
  double power_w = 0.0;
  double cost_m = 0.0;
  double lambda_e6 = 0.0;  // failure rate in 1e-6 per hour
  StructureKind psi = StructureKind::Parallel;
  int n_min = 1;
  int n_max = 1;
  std::string node;  // level-2 node this unit group feeds
};

struct DesignSpec {
  std::vector<DesignUnit> units;
  Budgets budgets;
  double mission_time_h = 0.0;
  std::optional<double> demand;     // acceptance threshold for R_system
  std::vector<int> baseline;        // optional reference design
};

struct DesignVector {
  std::vector<int> counts;
};

struct HierarchicalSystem {
  int level_count = 0;
  std::vector<ComponentSpec> components;
  std::vector<NodeSpec> nodes;
  std::optional<DesignSpec> design;

  const ComponentSpec* find_component(const std::string& id) const;
  const NodeSpec* find_node(const std::string& id) const;
  std::vector<const NodeSpec*> nodes_at_level(int level) const;
  /// The unique node at the top level; throws when absent or ambiguous.
  const NodeSpec& top_node() const;
};

/// Distribution of a bottom component at mission time t.
UFunction component_ufunction(const ComponentSpec& component, double t_hours);

HierarchicalSystem parse_model(const std::string& document);
HierarchicalSystem load_model(const std::string& path);
std::string serialize_model(const HierarchicalSystem& system);

/// Structural validation; an empty report means the model is sound.
std::vector<std::string> validate_model(const HierarchicalSystem& system);

/// Expands the design section into a concrete system: unit j contributes
/// n_j identical lifetime components under its composition at its node.
HierarchicalSystem instantiate_design(const HierarchicalSystem& skeleton,
                                      const DesignVector& counts,
                                      bool enforce_bounds = true);

/// Seeded generator of small random hierarchical systems for property and
/// equality tests. Explicit distributions only, so results are t-invariant.
struct RandomSystemOptions {
  std::uint64_t seed = 0;
  int max_levels = 4;          // in [2, 5]
  int max_states = 3;          // per component, in [2, 4]
  int max_components = 12;     // bottom components total
  bool allow_stochastic_cpts = true;
};

HierarchicalSystem random_system(const RandomSystemOptions& options);

}  // namespace msre
