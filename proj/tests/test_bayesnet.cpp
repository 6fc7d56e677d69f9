#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "msre/bayesnet.hpp"
#include "msre/model.hpp"
#include "msre/pipeline.hpp"

using namespace msre;

namespace {

BayesianNetwork independent_roots(const std::vector<std::pair<std::string, UFunction>>& roots) {
  BayesianNetwork net;
  for (const auto& [id, u] : roots) {
    Cpt cpt;
    std::vector<double> row;
    for (const Term& t : u.terms()) {
      cpt.child_states.push_back(t.performance);
      row.push_back(t.probability);
    }
    cpt.rows.push_back(row);
    net.add_node({id, cpt.child_states}, cpt);
  }
  return net;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("deterministic cpt rows are one-hot") {
  const DiscreteNode a{"a", {0, 1}};
  const DiscreteNode b{"b", {0, 1}};
  const Cpt series = deterministic_cpt(StructureFunction::series(), {a, b});
  REQUIRE(series.child_states == std::vector<double>{0, 1});
  REQUIRE(series.rows.size() == 4);
  CHECK(series.rows[0] == std::vector<double>{1, 0});
  CHECK(series.rows[1] == std::vector<double>{1, 0});
  CHECK(series.rows[2] == std::vector<double>{1, 0});
  CHECK(series.rows[3] == std::vector<double>{0, 1});

  const DiscreteNode c{"c", {0, 1, 2}};
  const Cpt parallel = deterministic_cpt(StructureFunction::parallel(), {a, c});
  CHECK(parallel.child_states == std::vector<double>{0, 1, 2, 3});
  for (const auto& row : parallel.rows) {
    CHECK(std::count(row.begin(), row.end(), 1.0) == 1);
    CHECK(std::count(row.begin(), row.end(), 0.0) == static_cast<long>(row.size()) - 1);
  }

  const Cpt x = deterministic_cpt(StructureFunction::exclusive_or(), {a, b});
  // (1,1) jams to 0
  CHECK(x.rows[3][0] == 1.0);
}

TEST_CASE("validate_cpt") {
  Cpt root;
  root.child_states = {0, 1};
  root.rows = {{0.5, 0.5}};
  CHECK(validate_cpt(root, {}).empty());

  Cpt broken;  // per-parent-state columns that do not normalize
  broken.child = "B";
  broken.parent_order = {"A"};
  broken.child_states = {0, 1};
  broken.rows = {{0.2, 0.7}, {0.8, 0.3}};
  const auto violations = validate_cpt(broken, {2});
  REQUIRE(!violations.empty());
  CHECK(violations.front().find("0.9") != std::string::npos);

  Cpt misshaped = root;
  misshaped.rows = {{1.0}};
  CHECK(!validate_cpt(misshaped, {}).empty());
}

TEST_CASE("marginal of a root and through deterministic CPTs") {
  BayesianNetwork net = independent_roots(
      {{"p", make_ufunction({0, 1}, {0.1, 0.9})}, {"q", make_ufunction({0, 1}, {0.1, 0.9})}});
  Cpt series = deterministic_cpt(StructureFunction::series(), {net.node("p"), net.node("q")});
  series.parent_order = {"p", "q"};
  net.add_node({"s", series.child_states}, series);

  const auto root = net.marginal("p");
  CHECK(root[0] == doctest::Approx(0.1));
  CHECK(root[1] == doctest::Approx(0.9));

  const auto s = net.marginal("s");
  CHECK(s[1] == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(s[0] == doctest::Approx(0.19).epsilon(1e-12));

  // identity channel: child marginal equals parent marginal
  Cpt identity;
  identity.parent_order = {"p"};
  identity.child_states = {0, 1};
  identity.rows = {{1, 0}, {0, 1}};
  net.add_node({"i", identity.child_states}, identity);
  CHECK(max_abs_diff(net.marginal("i"), root) <= 1e-12);
}

TEST_CASE("deterministic CPT marginal equals ugf compose of independent roots") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<std::string, UFunction>> roots;
    std::vector<UFunction> dists;
    const int n = 2 + static_cast<int>(rng() % 3);
    for (int j = 0; j < n; ++j) {
      const int k = 2 + static_cast<int>(rng() % 2);
      std::vector<double> perfs, probs;
      double sum = 0.0;
      for (int s = 0; s < k; ++s) {
        perfs.push_back(s);
        probs.push_back(0.1 + (rng() % 100) / 100.0);
        sum += probs.back();
      }
      for (double& p : probs) p /= sum;
      UFunction u = UFunction::from_terms([&] {
        std::vector<Term> t;
        for (int s = 0; s < k; ++s) t.push_back({perfs[s], probs[s]});
        return t;
      }());
      roots.emplace_back("r" + std::to_string(j), u);
      dists.push_back(u);
    }
    const StructureFunction w =
        (rng() % 2) ? StructureFunction::series() : StructureFunction::parallel();
    BayesianNetwork net = independent_roots(roots);
    std::vector<DiscreteNode> parents;
    for (const auto& [id, u] : roots) parents.push_back(net.node(id));
    Cpt cpt = deterministic_cpt(w, parents);
    net.add_node({"child", cpt.child_states}, cpt);

    const UFunction composed = compose(dists, w);
    const auto marginal = net.marginal("child");
    REQUIRE(marginal.size() == composed.size());
    for (std::size_t i = 0; i < marginal.size(); ++i) {
      CHECK(marginal[i] == doctest::Approx(composed.terms()[i].probability).epsilon(1e-9));
    }
  }
}

TEST_CASE("marginal equals joint enumeration on random networks") {
  for (int seed = 0; seed < 100; ++seed) {
    RandomSystemOptions options;
    options.seed = seed;
    options.max_levels = 4;
    options.max_states = 3;
    options.max_components = 8;
    const HierarchicalSystem sys = random_system(options);
    const auto roots = level2_ufunctions(sys, 0.0);
    const BayesianNetwork net = build_bn(sys, roots);
    REQUIRE(net.nodes().size() <= 12);
    const std::string top = sys.top_node().id;
    const auto exact = net.marginal(top);
    const auto brute = net.joint_enumeration(top);
    CHECK(max_abs_diff(exact, brute) <= 1e-9);
  }
}

TEST_CASE("marginal invariant under elimination orderings") {
  std::mt19937_64 rng(17);
  for (int seed = 0; seed < 10; ++seed) {
    RandomSystemOptions options;
    options.seed = 1000 + seed;
    const HierarchicalSystem sys = random_system(options);
    const BayesianNetwork net = build_bn(sys, level2_ufunctions(sys, 0.0));
    const std::string top = sys.top_node().id;
    const auto reference = net.marginal(top);
    std::vector<std::string> others;
    for (const DiscreteNode& n : net.nodes()) {
      if (n.id != top) others.push_back(n.id);
    }
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(others.begin(), others.end(), rng);
      const auto shuffled = net.marginal(top, others);
      CHECK(max_abs_diff(reference, shuffled) <= 1e-12);
    }
  }
}

TEST_CASE("joint enumeration guard") {
  std::vector<std::pair<std::string, UFunction>> roots;
  for (int i = 0; i < 25; ++i) {
    roots.emplace_back("r" + std::to_string(i), make_ufunction({0, 1}, {0.5, 0.5}));
  }
  BayesianNetwork net = independent_roots(roots);
  CHECK_THROWS_AS(net.joint_enumeration("r0"), Error);
}
