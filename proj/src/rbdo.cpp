#include "msre/rbdo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace msre {

namespace {

const DesignSpec& design_of(const HierarchicalSystem& skeleton) {
  if (!skeleton.design) {
    throw Error(ErrorCode::InvalidArgument, "model has no design section");
  }
  return *skeleton.design;
}

double mission_time(const DesignSpec& spec, double t_hours) {
  return t_hours >= 0.0 ? t_hours : spec.mission_time_h;
}

Acceptance design_acceptance(const DesignSpec& spec) {
  if (spec.demand) return Acceptance::demand_at_least(*spec.demand);
  return {};
}

double constraint_violation(const DesignSpec& spec, const EvaluationResult& eval) {
  double v = 0.0;
  v += std::max(0.0, eval.totals.mass_kg - spec.budgets.mass_kg) / spec.budgets.mass_kg;
  v += std::max(0.0, eval.totals.power_w - spec.budgets.power_w) / spec.budgets.power_w;
  v += std::max(0.0, eval.totals.cost_m - spec.budgets.cost_m) / spec.budgets.cost_m;
  v += std::max(0.0, spec.budgets.reliability - eval.reliability);
  return v;
}

}  // namespace

Totals budget_totals(const DesignSpec& spec, const DesignVector& counts) {
  if (counts.counts.size() != spec.units.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "design vector has " + std::to_string(counts.counts.size()) +
                    " entries, expected " + std::to_string(spec.units.size()));
  }
  Totals totals;
  for (std::size_t j = 0; j < spec.units.size(); ++j) {
    const DesignUnit& u = spec.units[j];
    totals.mass_kg += u.mass_kg * counts.counts[j];
    totals.power_w += u.power_w * counts.counts[j];
    totals.cost_m += u.cost_m * counts.counts[j];
  }
  return totals;
}

EvaluationResult evaluate_design(const HierarchicalSystem& skeleton,
                                 const DesignVector& counts, double t_hours,
                                 bool enforce_bounds) {
  const DesignSpec& spec = design_of(skeleton);
  const double t = mission_time(spec, t_hours);

  EvaluationResult result;
  result.totals = budget_totals(spec, counts);

  bool within_bounds = true;
  for (std::size_t j = 0; j < spec.units.size(); ++j) {
    if (counts.counts[j] < spec.units[j].n_min || counts.counts[j] > spec.units[j].n_max) {
      within_bounds = false;
      if (enforce_bounds) {
        throw Error(ErrorCode::BoundViolation,
                    "unit '" + spec.units[j].id + "': count " +
                        std::to_string(counts.counts[j]) + " outside bounds [" +
                        std::to_string(spec.units[j].n_min) + ", " +
                        std::to_string(spec.units[j].n_max) + "]");
      }
    }
  }

  const HierarchicalSystem sys = instantiate_design(skeleton, counts, false);
  result.reliability =
      system_reliability_ugfbn(sys, t, design_acceptance(spec)).reliability;

  result.feasible.mass = result.totals.mass_kg <= spec.budgets.mass_kg;
  result.feasible.power = result.totals.power_w <= spec.budgets.power_w;
  result.feasible.cost = result.totals.cost_m <= spec.budgets.cost_m;
  result.feasible.reliability = result.reliability >= spec.budgets.reliability;
  result.feasible.bounds = within_bounds;
  return result;
}

namespace {

struct Candidate {
  DesignVector counts;
  EvaluationResult eval;
};

/// Deterministic "better" relation: feasible beats infeasible; among
/// feasible, higher reliability wins, ties to the lexicographically
/// smaller design; among infeasible, smaller violation wins.
bool better(const DesignSpec& spec, const Candidate& a, const Candidate& b) {
  const bool fa = a.eval.feasible.all();
  const bool fb = b.eval.feasible.all();
  if (fa != fb) return fa;
  if (fa) {
    if (a.eval.reliability != b.eval.reliability) {
      return a.eval.reliability > b.eval.reliability;
    }
    return a.counts.counts < b.counts.counts;
  }
  return constraint_violation(spec, a.eval) < constraint_violation(spec, b.eval);
}

OptimizeResult optimize_exhaustive(const HierarchicalSystem& skeleton, double t,
                                   const DesignSpec& spec) {
  OptimizeResult result;
  result.exhaustive = true;

  const std::size_t k = spec.units.size();
  std::vector<int> counts(k);
  for (std::size_t j = 0; j < k; ++j) counts[j] = spec.units[j].n_min;

  std::optional<Candidate> best;
  int iteration = 0;
  for (;;) {
    Candidate cand;
    cand.counts.counts = counts;
    cand.eval = evaluate_design(skeleton, cand.counts, t, true);
    std::vector<double> point(counts.begin(), counts.end());
    result.trace.push_back({iteration++, point, cand.eval.reliability, 0.0});
    if (!best || better(spec, cand, *best)) best = std::move(cand);

    std::size_t j = k;
    bool done = true;
    while (j > 0) {
      --j;
      if (++counts[j] <= spec.units[j].n_max) {
        done = false;
        break;
      }
      counts[j] = spec.units[j].n_min;
    }
    if (done) break;
  }

  result.feasible_found = best->eval.feasible.all();
  result.best = best->counts;
  result.evaluation = best->eval;
  return result;
}

OptimizeResult optimize_relaxed(const HierarchicalSystem& skeleton, double t,
                                const DesignSpec& spec, const SolverConfig& config) {
  OptimizeResult result;
  result.exhaustive = false;
  const std::size_t k = spec.units.size();

  auto reliability_at = [&](const std::vector<double>& x) {
    DesignVector counts;
    counts.counts.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      counts.counts[j] = static_cast<int>(std::lround(x[j]));
    }
    const HierarchicalSystem sys = instantiate_design(skeleton, counts, false);
    return system_reliability_ugfbn(sys, t, design_acceptance(spec)).reliability;
  };

  // continuous relaxation evaluated through rounding at finite-difference
  // offsets of one whole unit; the surface is integer-valued anyway
  std::vector<double> x(k);
  for (std::size_t j = 0; j < k; ++j) {
    x[j] = 0.5 * (spec.units[j].n_min + spec.units[j].n_max);
  }

  auto project_box = [&](std::vector<double>& y) {
    for (std::size_t j = 0; j < k; ++j) {
      y[j] = std::clamp(y[j], double(spec.units[j].n_min), double(spec.units[j].n_max));
    }
  };
  auto scale_into_budget = [&](std::vector<double>& y) {
    // the budget constraints are linear in n, so a single backtracking
    // scale toward n_min restores feasibility
    for (int guard = 0; guard < 64; ++guard) {
      Totals tot;
      for (std::size_t j = 0; j < k; ++j) {
        tot.mass_kg += spec.units[j].mass_kg * y[j];
        tot.power_w += spec.units[j].power_w * y[j];
        tot.cost_m += spec.units[j].cost_m * y[j];
      }
      if (tot.mass_kg <= spec.budgets.mass_kg && tot.power_w <= spec.budgets.power_w &&
          tot.cost_m <= spec.budgets.cost_m) {
        return;
      }
      for (std::size_t j = 0; j < k; ++j) {
        y[j] = spec.units[j].n_min + 0.9 * (y[j] - spec.units[j].n_min);
      }
    }
  };

  project_box(x);
  scale_into_budget(x);

  double r = reliability_at(x);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    // forward finite differences of one unit
    std::vector<double> gradient(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> xp = x;
      xp[j] = std::min(xp[j] + 1.0, double(spec.units[j].n_max));
      if (xp[j] == x[j]) {
        xp[j] = std::max(x[j] - 1.0, double(spec.units[j].n_min));
        if (xp[j] == x[j]) continue;
        gradient[j] = (r - reliability_at(xp)) / (x[j] - xp[j]);
      } else {
        gradient[j] = (reliability_at(xp) - r) / (xp[j] - x[j]);
      }
    }
    double norm = 0.0;
    for (double g : gradient) norm += g * g;
    norm = std::sqrt(norm);

    double step_norm = 0.0;
    if (norm > 0.0) {
      std::vector<double> next = x;
      const double step = 2.0 / norm;
      for (std::size_t j = 0; j < k; ++j) next[j] += step * gradient[j];
      project_box(next);
      scale_into_budget(next);
      const double rn = reliability_at(next);
      if (rn >= r) {
        for (std::size_t j = 0; j < k; ++j) {
          step_norm += (next[j] - x[j]) * (next[j] - x[j]);
        }
        step_norm = std::sqrt(step_norm);
        x = next;
        r = rn;
      }
    }
    result.trace.push_back({iter, x, r, step_norm});
    if (step_norm < config.step_tolerance) break;
  }

  // round: start at floor, then greedily bump the coordinate that gains
  // the most reliability while staying feasible
  DesignVector counts;
  counts.counts.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    counts.counts[j] =
        std::clamp(static_cast<int>(std::floor(x[j])), spec.units[j].n_min,
                   spec.units[j].n_max);
  }

  auto evaluate = [&](const DesignVector& c) {
    return evaluate_design(skeleton, c, t, true);
  };

  Candidate best{counts, evaluate(counts)};
  // greedy repair toward the bound box floor if infeasible
  int guard = 0;
  while (!best.eval.feasible.all() && guard++ < 1000) {
    Candidate improved = best;
    bool progress = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (best.counts.counts[j] <= spec.units[j].n_min) continue;
      Candidate cand = best;
      --cand.counts.counts[j];
      cand.eval = evaluate(cand.counts);
      if (better(spec, cand, improved)) {
        improved = cand;
        progress = true;
      }
    }
    if (!progress) break;
    best = improved;
  }
  // greedy improvement: single-unit increments that keep feasibility
  guard = 0;
  for (bool progress = true; progress && guard++ < 1000;) {
    progress = false;
    Candidate improved = best;
    for (std::size_t j = 0; j < k; ++j) {
      if (best.counts.counts[j] >= spec.units[j].n_max) continue;
      Candidate cand = best;
      ++cand.counts.counts[j];
      cand.eval = evaluate(cand.counts);
      if (cand.eval.feasible.all() && better(spec, cand, improved)) {
        improved = cand;
        progress = true;
      }
    }
    best = improved;
  }

  result.feasible_found = best.eval.feasible.all();
  result.best = best.counts;
  result.evaluation = best.eval;
  return result;
}

}  // namespace

OptimizeResult optimize(const HierarchicalSystem& skeleton, double t_hours,
                        const SolverConfig& config) {
  const DesignSpec& spec = design_of(skeleton);
  if (spec.units.empty()) {
    throw Error(ErrorCode::InvalidArgument, "design has no units");
  }
  const double t = mission_time(spec, t_hours);

  std::uint64_t box = 1;
  bool overflow = false;
  for (const DesignUnit& u : spec.units) {
    if (u.n_min > u.n_max) {
      throw Error(ErrorCode::BoundViolation, "unit '" + u.id + "' has an empty bound box");
    }
    box *= static_cast<std::uint64_t>(u.n_max - u.n_min + 1);
    if (box > (std::uint64_t(1) << 40)) {
      overflow = true;
      break;
    }
  }

  const bool exhaustive =
      config.mode == SolverConfig::Mode::Exhaustive ||
      (config.mode == SolverConfig::Mode::Auto && !overflow &&
       box <= config.exhaustive_limit);
  if (exhaustive) return optimize_exhaustive(skeleton, t, spec);
  return optimize_relaxed(skeleton, t, spec, config);
}

ComparisonReport compare_schemes(const HierarchicalSystem& skeleton,
                                 const DesignVector& baseline,
                                 const DesignVector& optimum, double t_hours) {
  const DesignSpec& spec = design_of(skeleton);
  const EvaluationResult eb = evaluate_design(skeleton, baseline, t_hours, false);
  const EvaluationResult eo = evaluate_design(skeleton, optimum, t_hours, false);

  auto metric = [](std::string name, double budget, double base, double opt) {
    MetricComparison m;
    m.name = std::move(name);
    m.budget = budget;
    m.baseline = base;
    m.optimum = opt;
    m.k_baseline = base / budget;
    m.k_optimum = opt / budget;
    m.ds1_pct = (base - budget) / budget * 100.0;
    m.ds2_pct = (opt - budget) / budget * 100.0;
    return m;
  };

  ComparisonReport report;
  report.metrics.push_back(
      metric("mass", spec.budgets.mass_kg, eb.totals.mass_kg, eo.totals.mass_kg));
  report.metrics.push_back(
      metric("power", spec.budgets.power_w, eb.totals.power_w, eo.totals.power_w));
  report.metrics.push_back(
      metric("cost", spec.budgets.cost_m, eb.totals.cost_m, eo.totals.cost_m));
  report.metrics.push_back(
      metric("reliability", spec.budgets.reliability, eb.reliability, eo.reliability));
  return report;
}

std::string comparison_table(const ComparisonReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out << "metric,budget,baseline,optimum,k_baseline,k_optimum,ds1_pct,ds2_pct\n";
  out.precision(8);
  for (const MetricComparison& m : report.metrics) {
    out << m.name << ',' << m.budget << ',' << m.baseline << ',' << m.optimum << ','
        << m.k_baseline << ',' << m.k_optimum << ',' << m.ds1_pct << ',' << m.ds2_pct
        << '\n';
  }
  return out.str();
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "iteration,reliability,step_norm,point\n";
  out.setf(std::ios::fixed);
  out.precision(8);
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << row.reliability << ',' << row.step_norm << ',';
    for (std::size_t j = 0; j < row.point.size(); ++j) {
      if (j) out << ' ';
      out << row.point[j];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace msre
