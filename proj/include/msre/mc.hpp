#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "msre/model.hpp"
#include "msre/pipeline.hpp"

namespace msre {

struct SimulationResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  /// (top performance, frequency); frequencies sum to 1 exactly.
  std::vector<std::pair<double, double>> frequencies;
};

/// Seeded Monte Carlo estimate of R_system. Component states are sampled
/// from their distributions at t and propagated through structure
/// functions; stochastic CPT nodes are sampled. Each trial draws from a
/// counter-derived substream of the 64-bit seed, so results are identical
/// regardless of trial order or sharding.
SimulationResult simulate(const HierarchicalSystem& system, double t_hours,
                          std::uint64_t trials, std::uint64_t seed,
                          const Acceptance& acceptance = {});

}  // namespace msre
