#pragma once

#include "msre/errors.hpp"
#include "msre/ugf.hpp"

namespace msre {

/// Exponentially distributed time to failure with rate lambda per hour.
/// A component is binary: performance 0 when failed, working_performance
/// when operational.
struct ExponentialLifetime {
  double rate = 0.0;                 // failures per hour, > 0
  double working_performance = 1.0;  // >= 0
};

/// F(t) = 1 - exp(-lambda t).
double failure_probability(const ExponentialLifetime& model, double t_hours);

/// Two-term distribution {0: F(t), working_performance: R(t)}.
UFunction binary_ufunction_at(const ExponentialLifetime& model, double t_hours);

}  // namespace msre
