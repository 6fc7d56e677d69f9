#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "msre/model.hpp"
#include "msre/pipeline.hpp"

using namespace msre;

namespace {

std::string models_dir() { return MSRE_MODELS_DIR; }

double prob_of(const AnalysisResult& r, double perf) {
  for (const auto& [g, p] : r.top_distribution)
    if (std::abs(g - perf) <= 1e-9) return p;
  return 0.0;
}

}  // namespace

TEST_CASE("worked example: top distribution is 0.46 / 0.54") {
  auto sys = load_model(models_dir() + "/fig1.model.json");
  auto r = system_reliability_ugfbn(sys, 0.0, Acceptance::demand_at_least(1.0));
  REQUIRE(r.top_distribution.size() == 2);
  CHECK(std::abs(prob_of(r, 0.0) - 0.46) <= 1e-12);
  CHECK(std::abs(prob_of(r, 1.0) - 0.54) <= 1e-12);
  CHECK(std::abs(r.reliability - 0.54) <= 1e-12);

  auto ref = system_reliability_purebn(sys, 0.0, Acceptance::demand_at_least(1.0));
  CHECK(distribution_distance(r.top_distribution, ref.top_distribution) <= 1e-12);
}

TEST_CASE("acceptance modes: demand versus accepted states") {
  auto sys = load_model(models_dir() + "/fig1.model.json");
  auto by_states =
      system_reliability_ugfbn(sys, 0.0, Acceptance::accepted_states({1.0}));
  CHECK(by_states.reliability == doctest::Approx(0.54).epsilon(1e-12));
  // default acceptance = highest state
  auto top = system_reliability_ugfbn(sys, 0.0);
  CHECK(top.reliability == doctest::Approx(0.54).epsilon(1e-12));
  auto any = system_reliability_ugfbn(sys, 0.0, Acceptance::demand_at_least(0.0));
  CHECK(any.reliability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hybrid and pure paths agree over 100 random systems") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    RandomSystemOptions opt;
    opt.seed = seed;
    auto sys = random_system(opt);
    auto hybrid = system_reliability_ugfbn(sys, 0.0);
    auto pure = system_reliability_purebn(sys, 0.0);
    CHECK(distribution_distance(hybrid.top_distribution, pure.top_distribution) <=
          1e-9);
    CHECK(std::abs(hybrid.reliability - pure.reliability) <= 1e-9);
  }
}

TEST_CASE("paths agree on the bundled deep fixtures") {
  for (const char* name : {"case1.model.json", "bench.model.json"}) {
    CAPTURE(name);
    auto sys = load_model(models_dir() + "/" + name);
    double t = 1.0e4;
    auto hybrid = system_reliability_ugfbn(sys, t);
    PipelineConfig cfg;
    cfg.max_cpt_rows = std::uint64_t(1) << 26;
    auto pure = system_reliability_purebn(sys, t, {}, cfg);
    CHECK(distribution_distance(hybrid.top_distribution, pure.top_distribution) <=
          1e-9);
  }
}

TEST_CASE("ugf_levels extends the algebraic collapse upward") {
  auto sys = load_model(models_dir() + "/case1.model.json");
  PipelineConfig deep;
  deep.ugf_levels = 4;
  auto d = system_reliability_ugfbn(sys, 1.0e4, {}, deep);
  auto base = system_reliability_ugfbn(sys, 1.0e4);
  CHECK(distribution_distance(d.top_distribution, base.top_distribution) <= 1e-12);
}

TEST_CASE("pure path refuses oversized state spaces") {
  auto sys = load_model(models_dir() + "/bench.model.json");
  PipelineConfig tiny;
  tiny.max_cpt_rows = 1024;
  try {
    system_reliability_purebn(sys, 1.0e4, {}, tiny);
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateSpaceTooLarge);
  }
}

TEST_CASE("derive_state_spaces matches the analysis support") {
  auto sys = load_model(models_dir() + "/fig1.model.json");
  auto spaces = derive_state_spaces(sys, 0.0);
  REQUIRE(spaces.count("c2"));
  CHECK(spaces["c2"] == std::vector<double>{0.0, 1.0, 2.0});
  REQUIRE(spaces.count("top"));
  CHECK(spaces["top"] == std::vector<double>{0.0, 1.0});
}

TEST_CASE("benchmark_scaling validates its arguments and settings") {
  auto sys = load_model(models_dir() + "/fig1.model.json");
  CHECK_THROWS_AS(benchmark_scaling(sys, 0, 3, 0.0, {}, 1), Error);
  CHECK_THROWS_AS(benchmark_scaling(sys, 5, 0, 0.0, {}, 1), Error);
  CHECK_THROWS_AS(benchmark_scaling(sys, 5, 3, 0.0, {}, 0), Error);
}

TEST_CASE("benchmark rows carry growth and the CSV schema") {
  auto sys = load_model(models_dir() + "/bench.model.json");
  auto rows = benchmark_scaling(sys, 5, 2, 1.0e4, {}, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].components + 5 == rows[1].components);
  for (const auto& row : rows) {
    if (!row.truncated) {
      CHECK(row.bn_ms >= 0.0);
      CHECK(row.ratio == doctest::Approx(row.bn_ms / row.ugfbn_ms));
    }
  }
  auto csv = benchmark_csv(rows);
  CHECK(csv.rfind("step,components,bn_ms,ugfbn_ms,ratio,truncated", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
