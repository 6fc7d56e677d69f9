#include "msre/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace msre {

using nlohmann::json;

namespace {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double number_field(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t pos = 0;
      double d = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return d;
    } catch (const std::exception&) {
      throw Error(ErrorCode::SyntaxError, "field '" + key + "': not a number: " + s);
    }
  }
  if (!v.is_number()) {
    throw Error(ErrorCode::SyntaxError, "field '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> number_array(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) {
    throw Error(ErrorCode::SyntaxError, "field '" + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    json wrapper;
    wrapper["x"] = v[i];
    out.push_back(number_field(wrapper, "x"));
  }
  return out;
}

StructureKind parse_kind(const std::string& name) {
  if (name == "series") return StructureKind::Series;
  if (name == "parallel") return StructureKind::Parallel;
  if (name == "xor") return StructureKind::Xor;
  if (name == "custom") return StructureKind::Custom;
  throw Error(ErrorCode::SyntaxError, "unknown structure kind '" + name + "'");
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

const ComponentSpec* HierarchicalSystem::find_component(const std::string& id) const {
  for (const ComponentSpec& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const NodeSpec* HierarchicalSystem::find_node(const std::string& id) const {
  for (const NodeSpec& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<const NodeSpec*> HierarchicalSystem::nodes_at_level(int level) const {
  std::vector<const NodeSpec*> out;
  for (const NodeSpec& n : nodes) {
    if (n.level == level) out.push_back(&n);
  }
  return out;
}

const NodeSpec& HierarchicalSystem::top_node() const {
  auto top = nodes_at_level(level_count);
  if (top.size() != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "expected exactly one node at level " + std::to_string(level_count) +
                    ", found " + std::to_string(top.size()));
  }
  return *top.front();
}

UFunction component_ufunction(const ComponentSpec& component, double t_hours) {
  if (component.is_lifetime()) {
    return binary_ufunction_at(*component.lifetime, t_hours);
  }
  return UFunction::make(component.performances, component.probabilities);
}

HierarchicalSystem parse_model(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(document, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::SyntaxError,
                "parse error at line " + std::to_string(line) + " column " +
                    std::to_string(column) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::SyntaxError, "model document must be an object");
  }

  HierarchicalSystem sys;
  try {
    sys.level_count = doc.at("levels").get<int>();

    std::set<std::string> ids;
    for (const json& jc : doc.value("components", json::array())) {
      ComponentSpec c;
      c.id = jc.at("id").get<std::string>();
      if (!ids.insert(c.id).second) {
        throw Error(ErrorCode::DuplicateId, "duplicate id '" + c.id + "'");
      }
      if (jc.contains("lambda_e6")) {
        ExponentialLifetime life;
        c.lambda_e6 = number_field(jc, "lambda_e6");
        life.rate = c.lambda_e6 * 1e-6;
        if (jc.contains("performance")) {
          life.working_performance = number_field(jc, "performance");
        }
        c.lifetime = life;
      } else {
        c.performances = number_array(jc, "performances");
        c.probabilities = number_array(jc, "probabilities");
      }
      sys.components.push_back(std::move(c));
    }

    for (const json& jn : doc.value("nodes", json::array())) {
      NodeSpec n;
      n.id = jn.at("id").get<std::string>();
      if (!ids.insert(n.id).second) {
        throw Error(ErrorCode::DuplicateId, "duplicate id '" + n.id + "'");
      }
      n.level = jn.at("level").get<int>();
      for (const json& jp : jn.at("parents")) {
        n.parents.push_back(jp.get<std::string>());
      }
      if (jn.contains("structure")) {
        StructureKind kind = parse_kind(jn.at("structure").get<std::string>());
        if (kind == StructureKind::Custom) {
          std::vector<StructureFunction::CustomRow> table;
          for (const json& jr : jn.at("table")) {
            StructureFunction::CustomRow row;
            row.inputs = number_array(jr, "in");
            row.output = number_field(jr, "out");
            table.push_back(std::move(row));
          }
          n.structure = StructureFunction::custom(std::move(table));
        } else if (kind == StructureKind::Series) {
          n.structure = StructureFunction::series();
        } else if (kind == StructureKind::Parallel) {
          n.structure = StructureFunction::parallel();
        } else {
          n.structure = StructureFunction::exclusive_or();
        }
      }
      if (jn.contains("cpt")) {
        const json& jcpt = jn.at("cpt");
        CptSpec cpt;
        cpt.states = number_array(jcpt, "states");
        for (const json& jr : jcpt.at("rows")) {
          CptSpec::Row row;
          for (const json& ji : jr.at("in")) row.parent_states.push_back(ji.get<int>());
          row.probabilities = number_array(jr, "p");
          cpt.rows.push_back(std::move(row));
        }
        n.cpt = std::move(cpt);
      }
      sys.nodes.push_back(std::move(n));
    }

    if (doc.contains("design")) {
      const json& jd = doc.at("design");
      DesignSpec design;
      for (const json& ju : jd.at("units")) {
        DesignUnit u;
        u.id = ju.at("id").get<std::string>();
        u.mass_kg = number_field(ju, "mass_kg");
        u.power_w = number_field(ju, "power_w");
        u.cost_m = number_field(ju, "cost_m");
        u.lambda_e6 = number_field(ju, "lambda_e6");
        u.psi = parse_kind(ju.at("psi").get<std::string>());
        u.n_min = ju.at("n_min").get<int>();
        u.n_max = ju.at("n_max").get<int>();
        u.node = ju.at("node").get<std::string>();
        design.units.push_back(std::move(u));
      }
      const json& jb = jd.at("budgets");
      design.budgets.mass_kg = number_field(jb, "mass_kg");
      design.budgets.power_w = number_field(jb, "power_w");
      design.budgets.cost_m = number_field(jb, "cost_m");
      design.budgets.reliability = number_field(jb, "reliability");
      design.mission_time_h = number_field(jd, "mission_time_h");
      if (jd.contains("demand")) design.demand = number_field(jd, "demand");
      if (jd.contains("baseline")) {
        for (const json& jn : jd.at("baseline")) design.baseline.push_back(jn.get<int>());
      }
      sys.design = std::move(design);
    }
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("malformed model document: ") + e.what());
  }

  // link check: every parent reference must resolve
  std::set<std::string> known;
  for (const ComponentSpec& c : sys.components) known.insert(c.id);
  for (const NodeSpec& n : sys.nodes) known.insert(n.id);
  for (const NodeSpec& n : sys.nodes) {
    for (const std::string& p : n.parents) {
      if (!known.count(p)) {
        throw Error(ErrorCode::UnknownReference,
                    "node '" + n.id + "' references unknown id '" + p + "'");
      }
    }
  }
  if (sys.design) {
    for (const DesignUnit& u : sys.design->units) {
      if (!sys.find_node(u.node)) {
        throw Error(ErrorCode::UnknownReference,
                    "design unit '" + u.id + "' references unknown node '" + u.node + "'");
      }
    }
  }
  return sys;
}

HierarchicalSystem load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::InvalidArgument, "cannot open model file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const HierarchicalSystem& sys) {
  json doc;
  doc["levels"] = sys.level_count;
  doc["components"] = json::array();
  for (const ComponentSpec& c : sys.components) {
    json jc;
    jc["id"] = c.id;
    if (c.is_lifetime()) {
      jc["lambda_e6"] = format_double(c.lambda_e6);
      if (c.lifetime->working_performance != 1.0) {
        jc["performance"] = format_double(c.lifetime->working_performance);
      }
    } else {
      json perfs = json::array(), probs = json::array();
      for (double g : c.performances) perfs.push_back(format_double(g));
      for (double p : c.probabilities) probs.push_back(format_double(p));
      jc["performances"] = perfs;
      jc["probabilities"] = probs;
    }
    doc["components"].push_back(jc);
  }
  doc["nodes"] = json::array();
  for (const NodeSpec& n : sys.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["level"] = n.level;
    jn["parents"] = n.parents;
    if (n.structure) {
      jn["structure"] = structure_kind_name(n.structure->kind());
      if (n.structure->kind() == StructureKind::Custom) {
        json table = json::array();
        for (const auto& row : n.structure->table()) {
          json jr;
          json in = json::array();
          for (double g : row.inputs) in.push_back(format_double(g));
          jr["in"] = in;
          jr["out"] = format_double(row.output);
          table.push_back(jr);
        }
        jn["table"] = table;
      }
    }
    if (n.cpt) {
      json jcpt;
      json states = json::array();
      for (double s : n.cpt->states) states.push_back(format_double(s));
      jcpt["states"] = states;
      json rows = json::array();
      for (const auto& row : n.cpt->rows) {
        json jr;
        jr["in"] = row.parent_states;
        json p = json::array();
        for (double x : row.probabilities) p.push_back(format_double(x));
        jr["p"] = p;
        rows.push_back(jr);
      }
      jcpt["rows"] = rows;
      jn["cpt"] = jcpt;
    }
    doc["nodes"].push_back(jn);
  }
  if (sys.design) {
    const DesignSpec& d = *sys.design;
    json jd;
    jd["units"] = json::array();
    for (const DesignUnit& u : d.units) {
      json ju;
      ju["id"] = u.id;
      ju["mass_kg"] = format_double(u.mass_kg);
      ju["power_w"] = format_double(u.power_w);
      ju["cost_m"] = format_double(u.cost_m);
      ju["lambda_e6"] = format_double(u.lambda_e6);
      ju["psi"] = structure_kind_name(u.psi);
      ju["n_min"] = u.n_min;
      ju["n_max"] = u.n_max;
      ju["node"] = u.node;
      jd["units"].push_back(ju);
    }
    jd["budgets"] = {{"mass_kg", format_double(d.budgets.mass_kg)},
                     {"power_w", format_double(d.budgets.power_w)},
                     {"cost_m", format_double(d.budgets.cost_m)},
                     {"reliability", format_double(d.budgets.reliability)}};
    jd["mission_time_h"] = format_double(d.mission_time_h);
    if (d.demand) jd["demand"] = format_double(*d.demand);
    if (!d.baseline.empty()) jd["baseline"] = d.baseline;
    doc["design"] = jd;
  }
  return doc.dump(2);
}

std::vector<std::string> validate_model(const HierarchicalSystem& sys) {
  std::vector<std::string> violations;

  auto top = sys.nodes_at_level(sys.level_count);
  if (top.size() != 1) {
    violations.push_back("expected exactly one node at level " +
                         std::to_string(sys.level_count) + ", found " +
                         std::to_string(top.size()));
  }
  for (const NodeSpec& n : sys.nodes) {
    if (n.level < 2 || n.level > sys.level_count) {
      violations.push_back("node '" + n.id + "' has level " + std::to_string(n.level) +
                           " outside [2, " + std::to_string(sys.level_count) + "]");
    }
    if (n.parents.empty()) {
      violations.push_back("node '" + n.id + "' has no parents");
    }
    for (const std::string& p : n.parents) {
      if (n.level == 2) {
        if (!sys.find_component(p)) {
          violations.push_back("level-2 node '" + n.id +
                               "' must reference bottom components, but '" + p +
                               "' is not one");
        }
      } else {
        const NodeSpec* parent = sys.find_node(p);
        if (!parent) {
          violations.push_back("node '" + n.id + "' (level " + std::to_string(n.level) +
                               ") references '" + p + "', which is not a node");
        } else if (parent->level != n.level - 1) {
          violations.push_back("node '" + n.id + "' (level " + std::to_string(n.level) +
                               ") references '" + p + "' at level " +
                               std::to_string(parent->level) +
                               "; edges must go from level k to k+1");
        }
      }
    }
    if (n.level == 2 && !n.structure) {
      violations.push_back("level-2 node '" + n.id + "' must have a structure function");
    }
    if (n.level >= 3 && !n.structure && !n.cpt) {
      violations.push_back("node '" + n.id + "' needs a structure function or a CPT");
    }
    if (n.cpt) {
      const CptSpec& cpt = *n.cpt;
      if (cpt.states.empty()) {
        violations.push_back("cpt of '" + n.id + "' declares no states");
      }
      // infer parent cardinalities from the row inputs
      std::vector<int> cards(n.parents.size(), 0);
      std::set<std::vector<int>> seen;
      for (const auto& row : cpt.rows) {
        if (row.parent_states.size() != n.parents.size()) {
          violations.push_back("cpt of '" + n.id + "' has a row with " +
                               std::to_string(row.parent_states.size()) +
                               " parent states, expected " +
                               std::to_string(n.parents.size()));
          continue;
        }
        if (!seen.insert(row.parent_states).second) {
          violations.push_back("cpt of '" + n.id + "' repeats a parent-state row");
        }
        for (std::size_t j = 0; j < cards.size(); ++j) {
          cards[j] = std::max(cards[j], row.parent_states[j] + 1);
        }
        if (row.probabilities.size() != cpt.states.size()) {
          violations.push_back("cpt of '" + n.id + "' has a row of length " +
                               std::to_string(row.probabilities.size()) +
                               ", expected " + std::to_string(cpt.states.size()));
          continue;
        }
        double sum = 0.0;
        for (double p : row.probabilities) sum += p;
        if (std::abs(sum - 1.0) > kNormalizationTolerance) {
          std::ostringstream msg;
          msg.precision(12);
          msg << "cpt of '" << n.id << "': row for parent states (";
          for (std::size_t j = 0; j < row.parent_states.size(); ++j) {
            if (j) msg << ", ";
            msg << row.parent_states[j];
          }
          msg << ") sums to " << sum;
          violations.push_back(msg.str());
        }
      }
      std::uint64_t expected = 1;
      for (int k : cards) expected *= std::max(k, 1);
      if (cpt.rows.size() != expected) {
        violations.push_back("cpt of '" + n.id + "' has " +
                             std::to_string(cpt.rows.size()) + " rows, expected " +
                             std::to_string(expected) +
                             " to cover every parent-state combination");
      }
    }
  }

  for (const ComponentSpec& c : sys.components) {
    if (c.is_lifetime()) {
      if (c.lifetime->rate <= 0.0) {
        violations.push_back("component '" + c.id + "' has non-positive failure rate");
      }
      if (c.lifetime->working_performance < 0.0) {
        violations.push_back("component '" + c.id + "' has negative working performance");
      }
    } else {
      try {
        UFunction::make(c.performances, c.probabilities);
      } catch (const Error& e) {
        violations.push_back("component '" + c.id + "': " + e.what());
      }
    }
  }

  if (sys.design) {
    const DesignSpec& d = *sys.design;
    for (const DesignUnit& u : d.units) {
      if (u.n_min > u.n_max) {
        violations.push_back("design unit '" + u.id + "' has n_min > n_max");
      }
      const NodeSpec* node = sys.find_node(u.node);
      if (!node) {
        violations.push_back("design unit '" + u.id + "' references unknown node '" +
                             u.node + "'");
      } else if (node->level != 2) {
        violations.push_back("design unit '" + u.id + "' must attach to a level-2 node");
      }
    }
    if (d.budgets.mass_kg <= 0 || d.budgets.power_w <= 0 || d.budgets.cost_m <= 0) {
      violations.push_back("design budgets must be positive");
    }
    if (d.budgets.reliability < 0.0 || d.budgets.reliability > 1.0) {
      violations.push_back("reliability budget must lie in [0, 1]");
    }
    if (!d.baseline.empty() && d.baseline.size() != d.units.size()) {
      violations.push_back("baseline design length does not match unit count");
    }
  }
  return violations;
}

HierarchicalSystem instantiate_design(const HierarchicalSystem& skeleton,
                                      const DesignVector& counts,
                                      bool enforce_bounds) {
  if (!skeleton.design) {
    throw Error(ErrorCode::InvalidArgument, "model has no design section");
  }
  const DesignSpec& spec = *skeleton.design;
  if (counts.counts.size() != spec.units.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "design vector has " + std::to_string(counts.counts.size()) +
                    " entries, expected " + std::to_string(spec.units.size()));
  }

  HierarchicalSystem sys;
  sys.level_count = skeleton.level_count;
  sys.nodes = skeleton.nodes;
  sys.design = skeleton.design;

  std::set<std::string> replaced_nodes;
  for (const DesignUnit& u : spec.units) replaced_nodes.insert(u.node);

  // keep components that feed nodes not owned by any unit
  for (const ComponentSpec& c : skeleton.components) {
    bool used_elsewhere = false;
    for (const NodeSpec& n : skeleton.nodes) {
      if (n.level != 2 || replaced_nodes.count(n.id)) continue;
      if (std::find(n.parents.begin(), n.parents.end(), c.id) != n.parents.end()) {
        used_elsewhere = true;
        break;
      }
    }
    if (used_elsewhere) sys.components.push_back(c);
  }

  for (std::size_t j = 0; j < spec.units.size(); ++j) {
    const DesignUnit& u = spec.units[j];
    const int n = counts.counts[j];
    if (n < 1 || (enforce_bounds && (n < u.n_min || n > u.n_max))) {
      throw Error(ErrorCode::BoundViolation,
                  "unit '" + u.id + "': count " + std::to_string(n) +
                      " outside bounds [" + std::to_string(u.n_min) + ", " +
                      std::to_string(u.n_max) + "]");
    }
    std::vector<std::string> group_ids;
    for (int k = 1; k <= n; ++k) {
      ComponentSpec c;
      c.id = u.id + "_" + std::to_string(k);
      c.lambda_e6 = u.lambda_e6;
      c.lifetime = ExponentialLifetime{u.lambda_e6 * 1e-6, 1.0};
      group_ids.push_back(c.id);
      sys.components.push_back(std::move(c));
    }
    NodeSpec* node = nullptr;
    for (NodeSpec& candidate : sys.nodes) {
      if (candidate.id == u.node) node = &candidate;
    }
    if (!node) {
      throw Error(ErrorCode::UnknownReference,
                  "design unit '" + u.id + "' references unknown node '" + u.node + "'");
    }
    node->parents = group_ids;
    switch (u.psi) {
      case StructureKind::Series: node->structure = StructureFunction::series(); break;
      case StructureKind::Parallel: node->structure = StructureFunction::parallel(); break;
      case StructureKind::Xor: node->structure = StructureFunction::exclusive_or(); break;
      case StructureKind::Custom:
        throw Error(ErrorCode::InvalidArgument,
                    "design unit '" + u.id + "' cannot use a custom composition");
    }
  }
  return sys;
}

HierarchicalSystem random_system(const RandomSystemOptions& options) {
  std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
  auto uniform_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto dirichlet = [&](std::size_t k) {
    std::vector<double> p(k);
    double sum = 0.0;
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (double& x : p) {
      x = unit(rng);
      sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
  };

  HierarchicalSystem sys;
  const int levels = uniform_int(2, std::max(2, options.max_levels));
  sys.level_count = levels;

  const int m2 = (levels == 2) ? 1 : uniform_int(1, 3);
  int remaining = std::max(options.max_components, m2);
  std::vector<std::string> level2_ids;
  // track each node's state-value set so stochastic CPTs can be sized
  std::map<std::string, std::vector<double>> node_states;

  for (int i = 0; i < m2; ++i) {
    const int max_here = std::max(1, std::min(4, remaining - (m2 - i - 1)));
    const int comps = uniform_int(1, max_here);
    remaining -= comps;
    NodeSpec node;
    node.id = "s2_" + std::to_string(i + 1);
    node.level = 2;
    std::vector<UFunction> dists;
    for (int c = 0; c < comps; ++c) {
      ComponentSpec comp;
      comp.id = node.id + "_c" + std::to_string(c + 1);
      const int k = uniform_int(2, std::max(2, options.max_states));
      for (int s = 0; s < k; ++s) comp.performances.push_back(s);
      comp.probabilities = dirichlet(k);
      dists.push_back(UFunction::make(comp.performances, comp.probabilities));
      node.parents.push_back(comp.id);
      sys.components.push_back(std::move(comp));
    }
    node.structure = (rng() % 2) ? StructureFunction::series()
                                 : StructureFunction::parallel();
    UFunction composed = compose(dists, *node.structure);
    std::vector<double> states;
    for (const Term& t : composed.terms()) states.push_back(t.performance);
    node_states[node.id] = states;
    level2_ids.push_back(node.id);
    sys.nodes.push_back(std::move(node));
  }

  std::vector<std::string> prev = level2_ids;
  for (int level = 3; level <= levels; ++level) {
    const bool is_top = (level == levels);
    const int group_count =
        is_top ? 1 : std::max(1, uniform_int(1, static_cast<int>(prev.size())));
    // contiguous partition of prev into group_count groups
    std::vector<std::vector<std::string>> groups(group_count);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      groups[i * group_count / prev.size()].push_back(prev[i]);
    }
    std::vector<std::string> next;
    for (int gi = 0; gi < group_count; ++gi) {
      NodeSpec node;
      node.id = "s" + std::to_string(level) + "_" + std::to_string(gi + 1);
      node.level = level;
      node.parents = groups[gi];
      const bool stochastic =
          options.allow_stochastic_cpts && node.parents.size() <= 3 && (rng() % 10 < 3);
      if (stochastic) {
        CptSpec cpt;
        const int k = uniform_int(2, 3);
        for (int s = 0; s < k; ++s) cpt.states.push_back(s);
        std::vector<int> cards;
        for (const std::string& p : node.parents) {
          cards.push_back(static_cast<int>(node_states[p].size()));
        }
        std::uint64_t rows = 1;
        for (int c : cards) rows *= c;
        std::vector<int> assign(cards.size(), 0);
        for (std::uint64_t r = 0; r < rows; ++r) {
          CptSpec::Row row;
          row.parent_states = assign;
          row.probabilities = dirichlet(k);
          cpt.rows.push_back(std::move(row));
          for (std::size_t j = assign.size(); j > 0;) {
            --j;
            if (++assign[j] < cards[j]) break;
            assign[j] = 0;
          }
        }
        node.cpt = std::move(cpt);
        node_states[node.id] = node.cpt->states;
      } else {
        node.structure = (rng() % 2) ? StructureFunction::series()
                                     : StructureFunction::parallel();
        // derive the reachable state set over the parents' state products
        std::vector<std::vector<double>> parent_states;
        for (const std::string& p : node.parents) parent_states.push_back(node_states[p]);
        std::set<double> outputs;
        std::vector<std::size_t> idx(parent_states.size(), 0);
        std::vector<double> tuple(parent_states.size());
        for (;;) {
          for (std::size_t j = 0; j < parent_states.size(); ++j) {
            tuple[j] = parent_states[j][idx[j]];
          }
          outputs.insert(node.structure->apply(tuple));
          std::size_t j = parent_states.size();
          bool done = true;
          while (j > 0) {
            --j;
            if (++idx[j] < parent_states[j].size()) {
              done = false;
              break;
            }
            idx[j] = 0;
          }
          if (done) break;
        }
        node_states[node.id] = std::vector<double>(outputs.begin(), outputs.end());
      }
      next.push_back(node.id);
      sys.nodes.push_back(std::move(node));
    }
    prev = next;
  }
  return sys;
}

}  // namespace msre
