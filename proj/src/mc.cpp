#include "msre/mc.hpp"

#include <algorithm>
#include <cmath>

namespace msre {

namespace {

/// splitmix64; one stream per trial, keyed by (seed, trial counter).
struct TrialRng {
  std::uint64_t state;

  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state((seed + 0x9E3779B97F4A7C15ULL) ^
              (trial * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }
};

std::size_t sample_index(TrialRng& rng, const std::vector<double>& probabilities) {
  const double x = rng.next_unit();
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (x < acc) return i;
  }
  return probabilities.size() - 1;
}

std::size_t state_index(const std::vector<double>& states, double value) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (std::abs(states[i] - value) <= kPerformanceTolerance) return i;
  }
  throw Error(ErrorCode::StateMismatch, "sampled performance not in derived state set");
}

}  // namespace

SimulationResult simulate(const HierarchicalSystem& sys, double t_hours,
                          std::uint64_t trials, std::uint64_t seed,
                          const Acceptance& acceptance) {
  if (trials < 1) {
    throw Error(ErrorCode::InvalidArgument, "simulation needs at least one trial");
  }
  const auto spaces = derive_state_spaces(sys, t_hours);

  // fixed evaluation order: components first, then nodes by (level, id)
  std::vector<const ComponentSpec*> comps;
  for (const ComponentSpec& c : sys.components) comps.push_back(&c);
  std::sort(comps.begin(), comps.end(),
            [](const ComponentSpec* a, const ComponentSpec* b) { return a->id < b->id; });
  std::vector<const NodeSpec*> nodes;
  for (const NodeSpec& n : sys.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](const NodeSpec* a, const NodeSpec* b) {
    return a->level != b->level ? a->level < b->level : a->id < b->id;
  });

  // precompute per-component distributions
  std::vector<UFunction> comp_dists;
  comp_dists.reserve(comps.size());
  for (const ComponentSpec* c : comps) comp_dists.push_back(component_ufunction(*c, t_hours));

  // reindex CPT rows row-major (first parent slowest) regardless of the
  // order they were written in
  std::map<std::string, std::vector<std::vector<double>>> cpt_rows;
  for (const NodeSpec* node : nodes) {
    if (!node->cpt) continue;
    std::vector<int> cards;
    for (const std::string& p : node->parents) {
      cards.push_back(static_cast<int>(spaces.at(p).size()));
    }
    std::uint64_t total = 1;
    for (int c : cards) total *= c;
    std::vector<std::vector<double>> ordered(total);
    for (const CptSpec::Row& row : node->cpt->rows) {
      std::size_t index = 0;
      for (std::size_t j = 0; j < row.parent_states.size(); ++j) {
        if (row.parent_states[j] < 0 || row.parent_states[j] >= cards[j]) {
          throw Error(ErrorCode::StateMismatch,
                      "cpt of '" + node->id + "' indexes a parent state out of range");
        }
        index = index * cards[j] + row.parent_states[j];
      }
      ordered[index] = row.probabilities;
    }
    cpt_rows[node->id] = std::move(ordered);
  }

  const std::string top_id = sys.top_node().id;
  const std::vector<double>& top_states = spaces.at(top_id);

  std::vector<std::uint64_t> counts(top_states.size(), 0);
  std::uint64_t accepted = 0;

  std::map<std::string, double> performance;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    TrialRng rng(seed, trial);
    performance.clear();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::vector<double> probs;
      probs.reserve(comp_dists[i].size());
      for (const Term& t : comp_dists[i].terms()) probs.push_back(t.probability);
      const std::size_t s = sample_index(rng, probs);
      performance[comps[i]->id] = comp_dists[i].terms()[s].performance;
    }
    for (const NodeSpec* node : nodes) {
      if (node->structure) {
        std::vector<double> tuple;
        tuple.reserve(node->parents.size());
        for (const std::string& p : node->parents) tuple.push_back(performance.at(p));
        performance[node->id] = node->structure->apply(tuple);
      } else {
        const CptSpec& cpt = *node->cpt;
        const auto& ordered = cpt_rows.at(node->id);
        std::size_t row = 0;
        for (const std::string& p : node->parents) {
          const std::vector<double>& pstates = spaces.at(p);
          row = row * pstates.size() + state_index(pstates, performance.at(p));
        }
        const std::size_t s = sample_index(rng, ordered[row]);
        performance[node->id] = cpt.states[s];
      }
    }
    const double top = performance.at(top_id);
    ++counts[state_index(top_states, top)];

    bool ok;
    if (acceptance.demand) {
      ok = top >= *acceptance.demand - kPerformanceTolerance;
    } else if (acceptance.states) {
      ok = false;
      for (double a : *acceptance.states) {
        if (std::abs(top - a) <= kPerformanceTolerance) {
          ok = true;
          break;
        }
      }
    } else {
      ok = std::abs(top - top_states.back()) <= kPerformanceTolerance;
    }
    if (ok) ++accepted;
  }

  SimulationResult result;
  result.trials = trials;
  result.estimate = static_cast<double>(accepted) / static_cast<double>(trials);
  result.std_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
  for (std::size_t i = 0; i < top_states.size(); ++i) {
    result.frequencies.emplace_back(
        top_states[i], static_cast<double>(counts[i]) / static_cast<double>(trials));
  }
  return result;
}

}  // namespace msre
