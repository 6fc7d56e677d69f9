#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msre/errors.hpp"
#include "msre/ugf.hpp"

namespace msre {

/// Conditional probability table: one probability vector over the child's
/// states per combination of parent states. Rows are indexed row-major with
/// the first parent slowest. A root node has no parents and a single row
/// (its marginal).
struct Cpt {
  std::string child;
  std::vector<std::string> parent_order;
  std::vector<double> child_states;  // ascending performance values
  std::vector<std::vector<double>> rows;
};

struct DiscreteNode {
  std::string id;
  std::vector<double> state_values;  // ascending, distinct
};

/// Flat probability-weight tensor over a set of variables; the carrier for
/// variable elimination. Scope order fixes the layout (first var slowest).
struct Factor {
  std::vector<int> scope;           // node indices
  std::vector<int> cardinalities;   // aligned with scope
  std::vector<double> values;
};

/// Immutable-after-build discrete Bayesian network.
class BayesianNetwork {
 public:
  /// Adds a node together with its CPT. Parents must already exist.
  void add_node(DiscreteNode node, Cpt cpt);

  const std::vector<DiscreteNode>& nodes() const { return nodes_; }
  const DiscreteNode& node(const std::string& id) const;
  const Cpt& cpt(const std::string& id) const;
  bool has_node(const std::string& id) const;
  int node_index(const std::string& id) const;

  std::vector<std::string> validate() const;

  /// Exact marginal of `target` by variable elimination. When `ordering`
  /// is given it must list every non-target node exactly once; otherwise a
  /// min-degree ordering on the moralized graph is used, ties broken by id.
  std::vector<double> marginal(
      const std::string& target,
      const std::optional<std::vector<std::string>>& ordering = std::nullopt) const;

  /// Marginal by summation over the full joint; the brute-force oracle.
  /// Guarded: throws StateSpaceTooLarge above 2^24 joint states.
  std::vector<double> joint_enumeration(const std::string& target) const;

  /// Total number of probability entries across all CPTs.
  std::uint64_t cpt_entry_count() const;

 private:
  std::vector<DiscreteNode> nodes_;
  std::vector<Cpt> cpts_;
  std::map<std::string, int> index_;
};

/// One-hot CPT induced by a structure function over the given parents:
/// child states are the distinct outputs of w over the parent tuple space.
Cpt deterministic_cpt(const StructureFunction& w,
                      const std::vector<DiscreteNode>& parents);

/// Standalone CPT checks: coverage, row dimension, normalization,
/// non-negativity. Parent cardinalities are taken from `parent_states`.
std::vector<std::string> validate_cpt(const Cpt& cpt,
                                      const std::vector<int>& parent_cardinalities);

}  // namespace msre
