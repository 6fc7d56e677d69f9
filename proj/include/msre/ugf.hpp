#pragma once

#include <span>
#include <utility>
#include <vector>

#include "msre/errors.hpp"

namespace msre {

/// Absolute tolerance for treating two performance values as the same
/// discrete level when merging terms or looking up table entries.
inline constexpr double kPerformanceTolerance = 1e-9;

/// Allowed drift of a probability mass sum away from 1.
inline constexpr double kNormalizationTolerance = 1e-9;

struct Term {
  double performance = 0.0;
  double probability = 0.0;
};

/// A discrete performance distribution stored as an ordered polynomial:
/// terms (g_i, p_i) with strictly increasing performance keys. The formal
/// indeterminate z is implicit; performance lives in the exponent slot.
class UFunction {
 public:
  UFunction() = default;

  /// Validated construction: equal-length vectors, probabilities in [0,1]
  /// summing to 1 within tolerance. Duplicate performance keys merge.
  static UFunction make(const std::vector<double>& performances,
                        const std::vector<double>& probabilities);

  /// Canonicalizes (sorts and merges) without the normalization check.
  /// Used internally by composition, where products are exact.
  static UFunction from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double min_performance() const;
  double max_performance() const;

  /// Total probability of terms with performance >= demand.
  double prob_at_least(double demand) const;

  /// Max absolute difference between aligned terms; infinity when the
  /// supports differ beyond tolerance.
  static double distance(const UFunction& a, const UFunction& b);

 private:
  std::vector<Term> terms_;
};

enum class StructureKind { Series, Parallel, Xor, Custom };

const char* structure_kind_name(StructureKind kind);

/// Composition rule w(.) mapping parent performance tuples to an output
/// performance. Series takes the minimum, parallel the sum. Xor yields the
/// sum when at most one operand is nonzero and 0 otherwise, folded
/// left-to-right for arity > 2. Custom carries an explicit tuple table.
class StructureFunction {
 public:
  struct CustomRow {
    std::vector<double> inputs;
    double output = 0.0;
  };

  static StructureFunction series() { return StructureFunction(StructureKind::Series); }
  static StructureFunction parallel() { return StructureFunction(StructureKind::Parallel); }
  static StructureFunction exclusive_or() { return StructureFunction(StructureKind::Xor); }
  static StructureFunction custom(std::vector<CustomRow> table);

  StructureKind kind() const { return kind_; }
  const std::vector<CustomRow>& table() const { return table_; }

  /// Evaluates w on a full performance tuple. Custom tables throw
  /// IncompleteCustomTable naming the first uncovered tuple.
  double apply(std::span<const double> performances) const;

 private:
  explicit StructureFunction(StructureKind kind) : kind_(kind) {}

  StructureKind kind_;
  std::vector<CustomRow> table_;
};

UFunction make_ufunction(const std::vector<double>& performances,
                         const std::vector<double>& probabilities);

/// General composition operator: the product distribution of the inputs
/// with performances combined by w, like terms merged.
UFunction compose(const std::vector<UFunction>& inputs,
                  const StructureFunction& w);

double prob_at_least(const UFunction& u, double demand);

}  // namespace msre
