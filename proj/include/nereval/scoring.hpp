// Exact-match precision/recall/F-beta scoring and report rendering.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>

#include "nereval/corpus.hpp"
#include "nereval/types.hpp"

namespace nereval {

struct TypeScore {
  EntityType type;  // entity type name, or "overall" for the pooled row
  std::size_t gold_count = 0;
  std::size_t pred_count = 0;
  std::size_t correct_count = 0;
  double precision = 0.0;  // percent; 0 when pred_count == 0
  double recall = 0.0;     // percent; 0 when gold_count == 0
  double fbeta = 0.0;      // percent
};

struct EvalReport {
  double beta = 1.0;
  std::map<EntityType, TypeScore> per_type;
  TypeScore overall;  // recomputed from pooled counts, not averaged
  double token_accuracy = 0.0;  // percent; informational, not an entity metric
  std::size_t sentences = 0;
  std::size_t tokens = 0;
};

/// Weighted harmonic mean (beta^2+1)*P*R / (beta^2*P + R) of percentages;
/// 0 when the denominator is 0. beta must be positive.
double fbeta(double precision, double recall, double beta = 1.0);

/// Relative shrinkage of the residual error: 100*(f_new - f_old)/(100 - f_old).
/// May be negative. f_old must be < 100.
double error_reduction(double f_old, double f_new);

/// Exact-match evaluation: a predicted span is correct iff a span with the
/// same sentence, boundaries and type exists in gold. Predicted tags must
/// have the gold corpus's shape.
EvalReport score(const Corpus& gold, const TagMatrix& predicted, Scheme scheme,
                 double beta = 1.0,
                 Strictness strictness = Strictness::Lenient);

enum class ReportFormat { Human, KeyValue };

void render_report(const EvalReport& report, std::ostream& out,
                   ReportFormat format = ReportFormat::Human);

/// Fixed-point formatting with halves rounded away from zero.
std::string format_fixed(double value, int digits);

}  // namespace nereval
