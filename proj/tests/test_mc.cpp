#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "msre/mc.hpp"
#include "msre/model.hpp"
#include "msre/pipeline.hpp"

using namespace msre;

namespace {

std::string models_dir() { return MSRE_MODELS_DIR; }

std::string render(const SimulationResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << r.estimate << ' ' << r.std_error << ' ' << r.trials;
  for (const auto& [g, f] : r.frequencies) out << ' ' << g << ':' << f;
  return out.str();
}

}  // namespace

TEST_CASE("estimate converges to the exact worked-example reliability") {
  auto sys = load_model(models_dir() + "/fig1.model.json");
  auto acc = Acceptance::demand_at_least(1.0);
  auto exact = system_reliability_ugfbn(sys, 0.0, acc).reliability;
  auto sim = simulate(sys, 0.0, 200000, 42, acc);
  CHECK(sim.trials == 200000);
  CHECK(sim.std_error ==
        doctest::Approx(std::sqrt(sim.estimate * (1 - sim.estimate) / 200000.0)));
  CHECK(std::abs(sim.estimate - exact) <= 4.0 * sim.std_error);
  double total = 0.0;
  for (const auto& [g, f] : sim.frequencies) total += f;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixed seed reproduces byte-identical results") {
  auto sys = load_model(models_dir() + "/case1.model.json");
  auto a = simulate(sys, 1.0e4, 20000, 1234567);
  auto b = simulate(sys, 1.0e4, 20000, 1234567);
  CHECK(render(a) == render(b));
  auto c = simulate(sys, 1.0e4, 20000, 7654321);
  CHECK(render(a) != render(c));
}

TEST_CASE("20 seeded systems stay inside four standard errors") {
  int within = 0;
  const std::uint64_t trials = 200000;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    RandomSystemOptions opt;
    opt.seed = seed + 900;
    auto sys = random_system(opt);
    auto exact = system_reliability_ugfbn(sys, 0.0);
    auto sim = simulate(sys, 0.0, trials, seed * 65537 + 11);
    double se = sim.std_error > 0 ? sim.std_error : 1.0 / trials;
    if (std::abs(sim.estimate - exact.reliability) <= 4.0 * se) ++within;
  }
  CHECK(within >= 19);
}

TEST_CASE("degenerate distributions simulate exactly") {
  auto sys = parse_model(R"({
    "levels": 2,
    "components": [
      {"id": "a", "performances": ["2"], "probabilities": ["1"]},
      {"id": "b", "performances": ["3"], "probabilities": ["1"]}
    ],
    "nodes": [
      {"id": "top", "level": 2, "parents": ["a", "b"], "structure": "series"}
    ]
  })");
  auto sim = simulate(sys, 0.0, 1000, 5, Acceptance::demand_at_least(2.0));
  CHECK(sim.estimate == 1.0);
  CHECK(sim.std_error == 0.0);
  REQUIRE(sim.frequencies.size() == 1);
  CHECK(sim.frequencies[0].first == 2.0);
  CHECK(sim.frequencies[0].second == 1.0);
}

TEST_CASE("stochastic interior nodes are sampled consistently") {
  // identity-or-flip channel above a biased root; exact marginal is computable
  auto sys = parse_model(R"({
    "levels": 3,
    "components": [
      {"id": "a", "performances": ["0", "1"], "probabilities": ["0.3", "0.7"]}
    ],
    "nodes": [
      {"id": "A", "level": 2, "parents": ["a"], "structure": "series"},
      {"id": "top", "level": 3, "parents": ["A"],
       "cpt": {"states": ["0", "1"],
               "rows": [
                 {"in": [0], "p": ["0.9", "0.1"]},
                 {"in": [1], "p": ["0.2", "0.8"]}
               ]}}
    ]
  })");
  auto exact = system_reliability_ugfbn(sys, 0.0);  // P(top = 1) = 0.3*0.1 + 0.7*0.8
  CHECK(exact.reliability == doctest::Approx(0.59).epsilon(1e-12));
  auto sim = simulate(sys, 0.0, 200000, 99);
  CHECK(std::abs(sim.estimate - 0.59) <= 4.0 * sim.std_error);
}
