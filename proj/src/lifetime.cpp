#include "msre/lifetime.hpp"

#include <cmath>
#include <string>

namespace msre {

double failure_probability(const ExponentialLifetime& model, double t_hours) {
  if (t_hours < 0.0) {
    throw Error(ErrorCode::NegativeTime,
                "mission time must be non-negative, got " + std::to_string(t_hours));
  }
  return -std::expm1(-model.rate * t_hours);
}

UFunction binary_ufunction_at(const ExponentialLifetime& model, double t_hours) {
  const double f = failure_probability(model, t_hours);
  return UFunction::from_terms({{0.0, f}, {model.working_performance, 1.0 - f}});
}

}  // namespace msre
