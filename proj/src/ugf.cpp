#include "msre/ugf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace msre {

namespace {

bool is_nonzero(double x) { return std::abs(x) > kPerformanceTolerance; }

std::vector<Term> canonicalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.performance < b.performance; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() &&
        t.performance - merged.back().performance <= kPerformanceTolerance) {
      // keep the smaller key
      merged.back().probability += t.probability;
    } else {
      merged.push_back(t);
    }
  }
  return merged;
}

std::string format_tuple(std::span<const double> values) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

UFunction UFunction::make(const std::vector<double>& performances,
                          const std::vector<double>& probabilities) {
  if (performances.size() != probabilities.size() || performances.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "performance/probability vectors must have equal nonzero length (" +
                    std::to_string(performances.size()) + " vs " +
                    std::to_string(probabilities.size()) + ")");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < 0.0 || p > 1.0) {
      throw Error(ErrorCode::ProbabilityOutOfRange,
                  "probability " + std::to_string(p) + " outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << sum << ", expected 1";
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  std::vector<Term> terms(performances.size());
  for (std::size_t i = 0; i < performances.size(); ++i) {
    terms[i] = {performances[i], probabilities[i]};
  }
  return from_terms(std::move(terms));
}

UFunction UFunction::from_terms(std::vector<Term> terms) {
  UFunction u;
  u.terms_ = canonicalize(std::move(terms));
  return u;
}

double UFunction::min_performance() const {
  return terms_.empty() ? std::numeric_limits<double>::quiet_NaN()
                        : terms_.front().performance;
}

double UFunction::max_performance() const {
  return terms_.empty() ? std::numeric_limits<double>::quiet_NaN()
                        : terms_.back().performance;
}

double UFunction::prob_at_least(double demand) const {
  double total = 0.0;
  for (const Term& t : terms_) {
    if (t.performance >= demand - kPerformanceTolerance) total += t.probability;
  }
  return std::min(total, 1.0);
}

double UFunction::distance(const UFunction& a, const UFunction& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double max_diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.terms_[i].performance - b.terms_[i].performance) >
        kPerformanceTolerance) {
      return std::numeric_limits<double>::infinity();
    }
    max_diff = std::max(max_diff,
                        std::abs(a.terms_[i].probability - b.terms_[i].probability));
  }
  return max_diff;
}

const char* structure_kind_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::Series: return "series";
    case StructureKind::Parallel: return "parallel";
    case StructureKind::Xor: return "xor";
    case StructureKind::Custom: return "custom";
  }
  return "?";
}

StructureFunction StructureFunction::custom(std::vector<CustomRow> table) {
  StructureFunction w(StructureKind::Custom);
  w.table_ = std::move(table);
  return w;
}

double StructureFunction::apply(std::span<const double> performances) const {
  if (performances.empty()) {
    throw Error(ErrorCode::InvalidArgument, "structure function applied to empty tuple");
  }
  switch (kind_) {
    case StructureKind::Series: {
      double v = performances[0];
      for (double g : performances.subspan(1)) v = std::min(v, g);
      return v;
    }
    case StructureKind::Parallel: {
      double v = 0.0;
      for (double g : performances) v += g;
      return v;
    }
    case StructureKind::Xor: {
      double acc = performances[0];
      for (double g : performances.subspan(1)) {
        acc = (is_nonzero(acc) && is_nonzero(g)) ? 0.0 : acc + g;
      }
      return acc;
    }
    case StructureKind::Custom: {
      for (const CustomRow& row : table_) {
        if (row.inputs.size() != performances.size()) {
          throw Error(ErrorCode::ArityMismatch,
                      "custom table row arity " + std::to_string(row.inputs.size()) +
                          " does not match input arity " +
                          std::to_string(performances.size()));
        }
        bool match = true;
        for (std::size_t i = 0; i < performances.size(); ++i) {
          if (std::abs(row.inputs[i] - performances[i]) > kPerformanceTolerance) {
            match = false;
            break;
          }
        }
        if (match) return row.output;
      }
      throw Error(ErrorCode::IncompleteCustomTable,
                  "custom table has no entry for tuple " + format_tuple(performances));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown structure kind");
}

UFunction make_ufunction(const std::vector<double>& performances,
                         const std::vector<double>& probabilities) {
  return UFunction::make(performances, probabilities);
}

namespace {

UFunction compose_pair(const UFunction& a, const UFunction& b,
                       const StructureFunction& w) {
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      const double tuple[2] = {ta.performance, tb.performance};
      terms.push_back({w.apply(tuple), ta.probability * tb.probability});
    }
  }
  return UFunction::from_terms(std::move(terms));
}

UFunction compose_custom(const std::vector<UFunction>& inputs,
                         const StructureFunction& w) {
  const std::size_t n = inputs.size();
  std::vector<std::size_t> index(n, 0);
  std::vector<double> tuple(n);
  std::vector<Term> terms;
  for (;;) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Term& t = inputs[j].terms()[index[j]];
      tuple[j] = t.performance;
      p *= t.probability;
    }
    terms.push_back({w.apply(tuple), p});
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++index[j] < inputs[j].size()) break;
      index[j] = 0;
      if (j == 0) return UFunction::from_terms(std::move(terms));
    }
  }
}

}  // namespace

UFunction compose(const std::vector<UFunction>& inputs, const StructureFunction& w) {
  if (inputs.empty()) {
    throw Error(ErrorCode::InvalidArgument, "compose requires at least one input");
  }
  for (const UFunction& u : inputs) {
    if (u.empty()) {
      throw Error(ErrorCode::InvalidArgument, "compose input has no terms");
    }
  }
  if (w.kind() == StructureKind::Custom || w.kind() == StructureKind::Xor) {
    // xor is not associative under the fold semantics for n > 2, so the
    // left-assoc fold runs on full tuples just like custom tables.
    return compose_custom(inputs, w);
  }
  UFunction acc = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    acc = compose_pair(acc, inputs[i], w);
  }
  return acc;
}

double prob_at_least(const UFunction& u, double demand) {
  return u.prob_at_least(demand);
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IncompleteCustomTable: return "IncompleteCustomTable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::StateMismatch: return "StateMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::InvalidCpt: return "InvalidCpt";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "?";
}

}  // namespace msre
