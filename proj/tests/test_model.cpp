#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "msre/model.hpp"

using namespace msre;

namespace {

std::string models_dir() { return MSRE_MODELS_DIR; }

const char* kMiniDoc = R"({
  "levels": 3,
  "components": [
    {"id": "a", "performances": ["0", "1"], "probabilities": ["0.4", "0.6"]},
    {"id": "b", "performances": ["0", "2"], "probabilities": ["0.3", "0.7"]},
    {"id": "c", "lambda_e6": "1.52"}
  ],
  "nodes": [
    {"id": "A", "level": 2, "parents": ["a", "b"], "structure": "parallel"},
    {"id": "B", "level": 2, "parents": ["c"], "structure": "series"},
    {"id": "top", "level": 3, "parents": ["A", "B"], "structure": "series"}
  ]
})";

}  // namespace

TEST_CASE("parse accepts string and numeric probability spellings") {
  auto sys = parse_model(kMiniDoc);
  CHECK(sys.level_count == 3);
  CHECK(sys.components.size() == 3);
  CHECK(sys.nodes.size() == 3);
  const auto* a = sys.find_component("a");
  REQUIRE(a != nullptr);
  CHECK(a->performances == std::vector<double>{0.0, 1.0});
  CHECK(a->probabilities == std::vector<double>{0.4, 0.6});
  const auto* c = sys.find_component("c");
  REQUIRE(c != nullptr);
  REQUIRE(c->is_lifetime());
  CHECK(c->lifetime->rate == doctest::Approx(1.52e-6).epsilon(1e-15));

  // numeric spellings parse to the same model
  auto numeric = parse_model(R"({
    "levels": 2,
    "components": [
      {"id": "a", "performances": [0, 1], "probabilities": [0.4, 0.6]}
    ],
    "nodes": [
      {"id": "top", "level": 2, "parents": ["a"], "structure": "series"}
    ]
  })");
  CHECK(numeric.components[0].probabilities == std::vector<double>{0.4, 0.6});
}

TEST_CASE("parse reports syntax errors with position") {
  try {
    parse_model("{ \"levels\": 2, ");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
}

TEST_CASE("parse rejects duplicate ids and dangling references") {
  CHECK_THROWS_WITH_AS(parse_model(R"({
    "levels": 2,
    "components": [
      {"id": "a", "performances": ["0"], "probabilities": ["1"]},
      {"id": "a", "performances": ["0"], "probabilities": ["1"]}
    ],
    "nodes": [{"id": "top", "level": 2, "parents": ["a"], "structure": "series"}]
  })"),
                        doctest::Contains("a"), Error);
  try {
    parse_model(R"({
      "levels": 2,
      "components": [{"id": "a", "performances": ["0"], "probabilities": ["1"]}],
      "nodes": [{"id": "top", "level": 2, "parents": ["ghost"], "structure": "series"}]
    })");
    FAIL("expected UnknownReference");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownReference);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("serialize then parse round-trips exactly") {
  auto sys = parse_model(kMiniDoc);
  auto text = serialize_model(sys);
  auto again = parse_model(text);
  REQUIRE(again.components.size() == sys.components.size());
  for (std::size_t i = 0; i < sys.components.size(); ++i) {
    CHECK(again.components[i].id == sys.components[i].id);
    CHECK(again.components[i].performances == sys.components[i].performances);
    CHECK(again.components[i].probabilities == sys.components[i].probabilities);
    CHECK(again.components[i].is_lifetime() == sys.components[i].is_lifetime());
    if (sys.components[i].is_lifetime())
      CHECK(again.components[i].lifetime->rate == sys.components[i].lifetime->rate);
  }
  // second serialization is byte-identical (shortest-round-trip doubles)
  CHECK(serialize_model(again) == text);
}

TEST_CASE("validate_model flags broken CPTs and structure gaps") {
  auto broken = load_model(models_dir() + "/table2_broken.model.json");
  auto report = validate_model(broken);
  REQUIRE(!report.empty());
  bool mentions_normalization = false;
  for (const auto& line : report)
    if (line.find("0.9") != std::string::npos || line.find("1.1") != std::string::npos)
      mentions_normalization = true;
  CHECK(mentions_normalization);

  auto good = parse_model(kMiniDoc);
  CHECK(validate_model(good).empty());
}

TEST_CASE("bundled fixtures all validate") {
  for (const char* name :
       {"fig1.model.json", "case1.model.json", "bench.model.json",
        "case2.model.json", "units4.model.json"}) {
    CAPTURE(name);
    auto sys = load_model(models_dir() + "/" + name);
    CHECK(validate_model(sys).empty());
  }
}

TEST_CASE("component_ufunction covers both component kinds") {
  auto sys = parse_model(kMiniDoc);
  auto ua = component_ufunction(*sys.find_component("a"), 0.0);
  REQUIRE(ua.terms().size() == 2);
  CHECK(ua.terms()[0].probability == doctest::Approx(0.4));

  auto uc = component_ufunction(*sys.find_component("c"), 1.0e4);
  REQUIRE(uc.terms().size() == 2);
  // 1 - exp(-1.52e-6 * 1e4), 20-term series reference
  double x = 1.52e-6 * 1.0e4, term = 1.0, f = 0.0;
  for (int k = 1; k <= 20; ++k) {
    term *= -x / k;
    f -= term;
  }
  CHECK(uc.terms()[0].performance == 0.0);
  CHECK(uc.terms()[0].probability == doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("instantiate_design expands unit counts into components") {
  auto sys = load_model(models_dir() + "/units4.model.json");
  REQUIRE(sys.design.has_value());
  auto inst = instantiate_design(sys, DesignVector{{2, 1, 3, 4}});
  // 2 + 1 + 3 + 4 bottom components
  CHECK(inst.components.size() == 10);
  const auto* g1 = inst.find_node("g1");
  REQUIRE(g1 != nullptr);
  CHECK(g1->parents.size() == 2);
  for (const auto& p : g1->parents) CHECK(inst.find_component(p) != nullptr);
  CHECK(validate_model(inst).empty());

  CHECK_THROWS_AS(instantiate_design(sys, DesignVector{{0, 1, 1, 1}}), Error);
  CHECK_THROWS_AS(instantiate_design(sys, DesignVector{{5, 1, 1, 1}}), Error);
  // out-of-bounds allowed when enforcement is off
  auto loose = instantiate_design(sys, DesignVector{{5, 1, 1, 1}}, false);
  CHECK(loose.find_node("g1")->parents.size() == 5);
}

TEST_CASE("random_system emits valid models across seeds") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CAPTURE(seed);
    RandomSystemOptions opt;
    opt.seed = seed;
    auto sys = random_system(opt);
    auto report = validate_model(sys);
    CAPTURE(report.empty() ? std::string("ok") : report.front());
    CHECK(report.empty());
    CHECK_NOTHROW(sys.top_node());
  }
}
