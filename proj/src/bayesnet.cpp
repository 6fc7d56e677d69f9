#include "msre/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace msre {

namespace {

constexpr std::uint64_t kJointStateCap = std::uint64_t(1) << 24;

std::string row_label(const std::vector<int>& states) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out << ", ";
    out << states[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

void BayesianNetwork::add_node(DiscreteNode node, Cpt cpt) {
  if (index_.count(node.id)) {
    throw Error(ErrorCode::DuplicateId, "node '" + node.id + "' already exists");
  }
  for (const std::string& parent : cpt.parent_order) {
    if (!index_.count(parent)) {
      throw Error(ErrorCode::UnknownReference,
                  "node '" + node.id + "' references unknown parent '" + parent + "'");
    }
  }
  cpt.child = node.id;
  index_[node.id] = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(node));
  cpts_.push_back(std::move(cpt));
}

bool BayesianNetwork::has_node(const std::string& id) const {
  return index_.count(id) != 0;
}

int BayesianNetwork::node_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownReference, "unknown node '" + id + "'");
  }
  return it->second;
}

const DiscreteNode& BayesianNetwork::node(const std::string& id) const {
  return nodes_[node_index(id)];
}

const Cpt& BayesianNetwork::cpt(const std::string& id) const {
  return cpts_[node_index(id)];
}

std::uint64_t BayesianNetwork::cpt_entry_count() const {
  std::uint64_t total = 0;
  for (const Cpt& c : cpts_) {
    for (const auto& row : c.rows) total += row.size();
  }
  return total;
}

std::vector<std::string> validate_cpt(const Cpt& cpt,
                                      const std::vector<int>& parent_cardinalities) {
  std::vector<std::string> violations;
  if (parent_cardinalities.size() != cpt.parent_order.size()) {
    violations.push_back("cpt of '" + cpt.child + "': parent cardinality list length " +
                         std::to_string(parent_cardinalities.size()) +
                         " does not match parent count " +
                         std::to_string(cpt.parent_order.size()));
    return violations;
  }
  std::uint64_t expected_rows = 1;
  for (int k : parent_cardinalities) expected_rows *= std::max(k, 0);
  if (cpt.rows.size() != expected_rows) {
    violations.push_back("cpt of '" + cpt.child + "': " + std::to_string(cpt.rows.size()) +
                         " rows, expected " + std::to_string(expected_rows));
  }
  const std::size_t width = cpt.child_states.size();
  std::vector<int> states(cpt.parent_order.size(), 0);
  for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
    const auto& row = cpt.rows[r];
    if (row.size() != width) {
      violations.push_back("cpt of '" + cpt.child + "': row " + std::to_string(r) +
                           " has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(width));
      continue;
    }
    double sum = 0.0;
    bool negative = false;
    for (double p : row) {
      if (p < 0.0) negative = true;
      sum += p;
    }
    if (negative) {
      violations.push_back("cpt of '" + cpt.child + "': row " + std::to_string(r) +
                           " has a negative probability");
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "cpt of '" << cpt.child << "': row " << row_label(states) << " sums to "
          << sum;
      violations.push_back(msg.str());
    }
    // advance the parent-state counter (first parent slowest)
    for (std::size_t j = states.size(); j > 0;) {
      --j;
      if (j < parent_cardinalities.size() && ++states[j] < parent_cardinalities[j]) break;
      states[j] = 0;
    }
  }
  return violations;
}

std::vector<std::string> BayesianNetwork::validate() const {
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Cpt& c = cpts_[i];
    std::vector<int> cards;
    cards.reserve(c.parent_order.size());
    for (const std::string& parent : c.parent_order) {
      cards.push_back(static_cast<int>(nodes_[node_index(parent)].state_values.size()));
    }
    auto local = validate_cpt(c, cards);
    violations.insert(violations.end(), local.begin(), local.end());
    if (c.child_states.size() != nodes_[i].state_values.size()) {
      violations.push_back("node '" + nodes_[i].id +
                           "': cpt child-state count disagrees with node states");
    }
  }
  return violations;
}

Cpt deterministic_cpt(const StructureFunction& w,
                      const std::vector<DiscreteNode>& parents) {
  if (parents.empty()) {
    throw Error(ErrorCode::InvalidArgument, "deterministic_cpt requires parents");
  }
  const std::size_t n = parents.size();
  std::uint64_t combos = 1;
  for (const DiscreteNode& p : parents) combos *= p.state_values.size();

  // first pass: collect outputs per tuple
  std::vector<double> outputs;
  outputs.reserve(combos);
  std::vector<std::size_t> index(n, 0);
  std::vector<double> tuple(n);
  for (std::uint64_t r = 0; r < combos; ++r) {
    for (std::size_t j = 0; j < n; ++j) tuple[j] = parents[j].state_values[index[j]];
    outputs.push_back(w.apply(tuple));
    for (std::size_t j = n; j > 0;) {
      --j;
      if (++index[j] < parents[j].state_values.size()) break;
      index[j] = 0;
    }
  }

  // distinct outputs, ascending, merged by tolerance
  std::vector<double> states = outputs;
  std::sort(states.begin(), states.end());
  std::vector<double> child_states;
  for (double v : states) {
    if (child_states.empty() || v - child_states.back() > kPerformanceTolerance) {
      child_states.push_back(v);
    }
  }

  Cpt cpt;
  for (const DiscreteNode& p : parents) cpt.parent_order.push_back(p.id);
  cpt.child_states = child_states;
  cpt.rows.resize(combos);
  for (std::uint64_t r = 0; r < combos; ++r) {
    std::vector<double> row(child_states.size(), 0.0);
    auto it = std::lower_bound(child_states.begin(), child_states.end(),
                               outputs[r] - kPerformanceTolerance);
    row[static_cast<std::size_t>(it - child_states.begin())] = 1.0;
    cpt.rows[r] = std::move(row);
  }
  return cpt;
}

namespace {

Factor cpt_to_factor(const BayesianNetwork& net, const Cpt& cpt) {
  Factor f;
  for (const std::string& parent : cpt.parent_order) {
    f.scope.push_back(net.node_index(parent));
  }
  f.scope.push_back(net.node_index(cpt.child));
  for (int idx : f.scope) {
    f.cardinalities.push_back(static_cast<int>(net.nodes()[idx].state_values.size()));
  }
  std::size_t total = 1;
  for (int c : f.cardinalities) total *= c;
  f.values.resize(total);
  const std::size_t width = cpt.child_states.size();
  for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
    for (std::size_t s = 0; s < width; ++s) {
      f.values[r * width + s] = cpt.rows[r][s];
    }
  }
  return f;
}

Factor factor_product(const Factor& a, const Factor& b) {
  Factor out;
  out.scope = a.scope;
  out.cardinalities = a.cardinalities;
  for (std::size_t i = 0; i < b.scope.size(); ++i) {
    if (std::find(out.scope.begin(), out.scope.end(), b.scope[i]) == out.scope.end()) {
      out.scope.push_back(b.scope[i]);
      out.cardinalities.push_back(b.cardinalities[i]);
    }
  }
  std::size_t total = 1;
  for (int c : out.cardinalities) total *= c;
  out.values.assign(total, 0.0);

  // map each operand's scope position into the output assignment
  auto positions = [&](const Factor& f) {
    std::vector<std::size_t> pos(f.scope.size());
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      pos[i] = static_cast<std::size_t>(
          std::find(out.scope.begin(), out.scope.end(), f.scope[i]) - out.scope.begin());
    }
    return pos;
  };
  const auto pos_a = positions(a);
  const auto pos_b = positions(b);

  std::vector<int> assign(out.scope.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t ia = 0;
    for (std::size_t i = 0; i < pos_a.size(); ++i) ia = ia * a.cardinalities[i] + assign[pos_a[i]];
    std::size_t ib = 0;
    for (std::size_t i = 0; i < pos_b.size(); ++i) ib = ib * b.cardinalities[i] + assign[pos_b[i]];
    out.values[idx] = a.values[ia] * b.values[ib];
    for (std::size_t j = assign.size(); j > 0;) {
      --j;
      if (++assign[j] < out.cardinalities[j]) break;
      assign[j] = 0;
    }
  }
  return out;
}

Factor factor_sum_out(const Factor& f, int var) {
  auto it = std::find(f.scope.begin(), f.scope.end(), var);
  if (it == f.scope.end()) return f;
  const std::size_t pos = static_cast<std::size_t>(it - f.scope.begin());

  Factor out;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (i == pos) continue;
    out.scope.push_back(f.scope[i]);
    out.cardinalities.push_back(f.cardinalities[i]);
  }
  std::size_t total = 1;
  for (int c : out.cardinalities) total *= c;
  out.values.assign(std::max<std::size_t>(total, 1), 0.0);

  std::vector<int> assign(f.scope.size(), 0);
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    std::size_t oidx = 0;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      if (i == pos) continue;
      oidx = oidx * f.cardinalities[i] + assign[i];
    }
    out.values[oidx] += f.values[idx];
    for (std::size_t j = assign.size(); j > 0;) {
      --j;
      if (++assign[j] < f.cardinalities[j]) break;
      assign[j] = 0;
    }
  }
  return out;
}

}  // namespace

std::vector<double> BayesianNetwork::marginal(
    const std::string& target,
    const std::optional<std::vector<std::string>>& ordering) const {
  const int target_idx = node_index(target);

  auto problems = validate();
  if (!problems.empty()) {
    throw Error(ErrorCode::InvalidCpt, "invalid network: " + problems.front());
  }

  std::vector<Factor> factors;
  factors.reserve(cpts_.size());
  for (const Cpt& c : cpts_) factors.push_back(cpt_to_factor(*this, c));

  // elimination order
  std::vector<int> order;
  if (ordering) {
    std::set<int> seen;
    for (const std::string& id : *ordering) {
      int idx = node_index(id);
      if (idx == target_idx) continue;
      if (!seen.insert(idx).second) {
        throw Error(ErrorCode::InvalidArgument,
                    "elimination ordering repeats node '" + id + "'");
      }
      order.push_back(idx);
    }
    if (order.size() != nodes_.size() - 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "elimination ordering must cover every non-target node");
    }
  } else {
    // min-degree on the moralized graph, ties broken by node id
    std::vector<std::set<int>> adj(nodes_.size());
    for (const Cpt& c : cpts_) {
      std::vector<int> clique;
      for (const std::string& p : c.parent_order) clique.push_back(node_index(p));
      clique.push_back(node_index(c.child));
      for (int a : clique) {
        for (int b : clique) {
          if (a != b) adj[a].insert(b);
        }
      }
    }
    std::set<int> remaining;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (static_cast<int>(i) != target_idx) remaining.insert(static_cast<int>(i));
    }
    while (!remaining.empty()) {
      int best = -1;
      std::size_t best_degree = 0;
      for (int v : remaining) {
        std::size_t degree = 0;
        for (int u : adj[v]) {
          if (remaining.count(u) || u == target_idx) ++degree;
        }
        if (best < 0 || degree < best_degree ||
            (degree == best_degree && nodes_[v].id < nodes_[best].id)) {
          best = v;
          best_degree = degree;
        }
      }
      order.push_back(best);
      remaining.erase(best);
      // connect the eliminated node's neighbors
      std::vector<int> nbrs;
      for (int u : adj[best]) {
        if (remaining.count(u)) nbrs.push_back(u);
      }
      for (int a : nbrs) {
        for (int b : nbrs) {
          if (a != b) adj[a].insert(b);
        }
      }
    }
  }

  for (int var : order) {
    Factor merged;
    bool have = false;
    std::vector<Factor> rest;
    for (Factor& f : factors) {
      if (std::find(f.scope.begin(), f.scope.end(), var) != f.scope.end()) {
        merged = have ? factor_product(merged, f) : std::move(f);
        have = true;
      } else {
        rest.push_back(std::move(f));
      }
    }
    if (have) rest.push_back(factor_sum_out(merged, var));
    factors = std::move(rest);
  }

  Factor result;
  bool have = false;
  for (Factor& f : factors) {
    result = have ? factor_product(result, f) : std::move(f);
    have = true;
  }
  if (!have || result.scope != std::vector<int>{target_idx}) {
    // remaining scope must be exactly the target
    if (have && result.scope.empty()) {
      throw Error(ErrorCode::InvalidArgument, "target eliminated from all factors");
    }
  }
  std::vector<double>& v = result.values;
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total <= 0.0) {
    throw Error(ErrorCode::InvalidCpt, "marginal of '" + target + "' has zero mass");
  }
  for (double& x : v) x /= total;
  return v;
}

std::vector<double> BayesianNetwork::joint_enumeration(const std::string& target) const {
  const int target_idx = node_index(target);
  std::uint64_t joint = 1;
  for (const DiscreteNode& n : nodes_) {
    joint *= n.state_values.size();
    if (joint > kJointStateCap) {
      throw Error(ErrorCode::StateSpaceTooLarge,
                  "joint state space exceeds 2^24 states");
    }
  }
  std::vector<double> marginal(nodes_[target_idx].state_values.size(), 0.0);
  std::vector<int> assign(nodes_.size(), 0);
  for (std::uint64_t s = 0; s < joint; ++s) {
    double p = 1.0;
    for (std::size_t i = 0; i < nodes_.size() && p > 0.0; ++i) {
      const Cpt& c = cpts_[i];
      std::size_t row = 0;
      for (const std::string& parent : c.parent_order) {
        const int pi = node_index(parent);
        row = row * nodes_[pi].state_values.size() + assign[pi];
      }
      p *= c.rows[row][assign[i]];
    }
    marginal[assign[target_idx]] += p;
    for (std::size_t j = assign.size(); j > 0;) {
      --j;
      if (++assign[j] < static_cast<int>(nodes_[j].state_values.size())) break;
      assign[j] = 0;
    }
  }
  return marginal;
}

}  // namespace msre
