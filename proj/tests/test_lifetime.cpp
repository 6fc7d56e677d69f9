#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "msre/lifetime.hpp"

using namespace msre;

namespace {

// 20-term Taylor expansion of 1 - e^{-x}; independent of expm1
double taylor_failure(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 20; ++k) {
    term *= -x / k;
    sum -= term;
  }
  return sum;
}

}  // namespace

TEST_CASE("failure probability basics") {
  const ExponentialLifetime m{1.52e-6, 1.0};
  CHECK(failure_probability(m, 0.0) == doctest::Approx(0.0));
  const double f = failure_probability(m, 1e4);
  CHECK(f == doctest::Approx(taylor_failure(0.0152)).epsilon(1e-12));
  CHECK(f == doctest::Approx(0.0150851).epsilon(1e-5));
  CHECK_THROWS_AS(failure_probability(m, -1.0), Error);
}

TEST_CASE("complement identity over random (lambda, t)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lam(1e-8, 1e-3);
  std::uniform_real_distribution<double> tt(0.0, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const ExponentialLifetime m{lam(rng), 1.0};
    const double t = tt(rng);
    const double f = failure_probability(m, t);
    const double r = std::exp(-m.rate * t);
    CHECK(std::abs(f + r - 1.0) <= 1e-12);
  }
}

TEST_CASE("monotone in t and lambda") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lam(1e-8, 1e-3);
  std::uniform_real_distribution<double> tt(0.0, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double l1 = lam(rng), l2 = lam(rng);
    const double t1 = tt(rng), t2 = tt(rng);
    const ExponentialLifetime lo{std::min(l1, l2), 1.0};
    const ExponentialLifetime hi{std::max(l1, l2), 1.0};
    CHECK(failure_probability(lo, t1) <= failure_probability(hi, t1) + 1e-15);
    CHECK(failure_probability(lo, std::min(t1, t2)) <=
          failure_probability(lo, std::max(t1, t2)) + 1e-15);
  }
}

TEST_CASE("binary ufunction") {
  const ExponentialLifetime m{1.52e-6, 1.0};
  const UFunction at0 = binary_ufunction_at(m, 0.0);
  REQUIRE(at0.size() == 2);
  CHECK(at0.terms()[1].probability == doctest::Approx(1.0));

  const UFunction at = binary_ufunction_at(m, 1e4);
  REQUIRE(at.size() == 2);
  CHECK(at.terms()[0].performance == doctest::Approx(0.0));
  CHECK(at.terms()[0].probability == doctest::Approx(0.0150851).epsilon(1e-5));
  CHECK(at.terms()[1].probability == doctest::Approx(0.9849149).epsilon(1e-5));

  const ExponentialLifetime strong{1e-30, 2.0};
  const UFunction degenerate = binary_ufunction_at(strong, 1.0);
  CHECK(degenerate.prob_at_least(2.0) == doctest::Approx(1.0));

  double sum = 0.0;
  for (const Term& t : at.terms()) sum += t.probability;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}
