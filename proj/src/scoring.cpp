#include "nereval/scoring.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nereval {

namespace {

struct Counts {
  std::size_t gold = 0;
  std::size_t pred = 0;
  std::size_t correct = 0;
};

TypeScore make_type_score(EntityType type, const Counts& counts, double beta) {
  TypeScore s;
  s.type = std::move(type);
  s.gold_count = counts.gold;
  s.pred_count = counts.pred;
  s.correct_count = counts.correct;
  s.precision = counts.pred == 0 ? 0.0 : 100.0 * counts.correct / counts.pred;
  s.recall = counts.gold == 0 ? 0.0 : 100.0 * counts.correct / counts.gold;
  s.fbeta = fbeta(s.precision, s.recall, beta);
  return s;
}

// Both lists sorted by start with unique starts, so exact matches can only
// pair spans with equal starts.
std::size_t count_matches(const std::vector<EntitySpan>& gold,
                          const std::vector<EntitySpan>& pred,
                          std::map<EntityType, Counts>& by_type) {
  std::size_t matched = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < gold.size() && b < pred.size()) {
    if (gold[a].start == pred[b].start) {
      if (gold[a].end == pred[b].end && gold[a].type == pred[b].type) {
        ++by_type[gold[a].type].correct;
        ++matched;
      }
      ++a;
      ++b;
    } else if (gold[a].start < pred[b].start) {
      ++a;
    } else {
      ++b;
    }
  }
  return matched;
}

}  // namespace

double fbeta(double precision, double recall, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (b2 + 1.0) * precision * recall / denom;
}

double error_reduction(double f_old, double f_new) {
  if (f_old >= 100.0) throw std::invalid_argument("f_old must be below 100");
  return 100.0 * (f_new - f_old) / (100.0 - f_old);
}

EvalReport score(const Corpus& gold, const TagMatrix& predicted, Scheme scheme,
                 double beta, Strictness strictness) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  check_shape(gold, predicted);

  EvalReport report;
  report.beta = beta;
  std::map<EntityType, Counts> by_type;
  std::size_t tokens = 0;
  std::size_t agreeing = 0;

  std::vector<const Sentence*> sentences = gold.sentences();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::vector<NeTag> gold_tags = sentences[i]->tags();
    const std::vector<NeTag>& pred_tags = predicted[i];
    for (std::size_t t = 0; t < gold_tags.size(); ++t) {
      ++tokens;
      if (gold_tags[t] == pred_tags[t]) ++agreeing;
    }
    std::vector<EntitySpan> gold_spans = tags_to_spans(gold_tags, scheme, strictness, i);
    std::vector<EntitySpan> pred_spans = tags_to_spans(pred_tags, scheme, strictness, i);
    for (const EntitySpan& span : gold_spans) ++by_type[span.type].gold;
    for (const EntitySpan& span : pred_spans) ++by_type[span.type].pred;
    count_matches(gold_spans, pred_spans, by_type);
  }

  Counts overall;
  for (const auto& [type, counts] : by_type) {
    overall.gold += counts.gold;
    overall.pred += counts.pred;
    overall.correct += counts.correct;
    report.per_type.emplace(type, make_type_score(type, counts, beta));
  }
  report.overall = make_type_score("overall", overall, beta);
  report.token_accuracy = tokens == 0 ? 0.0 : 100.0 * agreeing / tokens;
  report.sentences = sentences.size();
  report.tokens = tokens;
  return report;
}

std::string format_fixed(double value, int digits) {
  double scale = 1.0;
  for (int i = 0; i < digits; ++i) scale *= 10.0;
  double rounded = std::round(value * scale) / scale;
  if (rounded == 0.0) rounded = 0.0;  // normalize -0
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << rounded;
  return os.str();
}

namespace {

void render_human(const EvalReport& report, std::ostream& out) {
  out << "processed " << report.sentences << " sentences, " << report.tokens << " tokens\n";
  out << "token accuracy: " << format_fixed(report.token_accuracy, 2)
      << "% (informational)\n\n";
  out << "type         precision    recall     F(b=" << format_fixed(report.beta, 0)
      << ")      gold    pred correct\n";
  auto row = [&out](const TypeScore& s) {
    std::ostringstream line;
    line << std::left << std::setw(12) << s.type << std::right
         << std::setw(10) << format_fixed(s.precision, 2) << "%"
         << std::setw(9) << format_fixed(s.recall, 2) << "%"
         << std::setw(10) << format_fixed(s.fbeta, 2)
         << std::setw(10) << s.gold_count
         << std::setw(8) << s.pred_count
         << std::setw(8) << s.correct_count;
    out << line.str() << '\n';
  };
  for (const auto& [type, type_score] : report.per_type) row(type_score);
  row(report.overall);
}

void render_kv(const EvalReport& report, std::ostream& out) {
  out << "beta " << format_fixed(report.beta, 2) << '\n';
  out << "sentences " << report.sentences << '\n';
  out << "tokens " << report.tokens << '\n';
  out << "token_accuracy " << format_fixed(report.token_accuracy, 2) << '\n';
  auto rows = [&out](const TypeScore& s) {
    out << s.type << ".gold " << s.gold_count << '\n';
    out << s.type << ".pred " << s.pred_count << '\n';
    out << s.type << ".correct " << s.correct_count << '\n';
    out << s.type << ".precision " << format_fixed(s.precision, 2) << '\n';
    out << s.type << ".recall " << format_fixed(s.recall, 2) << '\n';
    out << s.type << ".f " << format_fixed(s.fbeta, 2) << '\n';
  };
  for (const auto& [type, type_score] : report.per_type) rows(type_score);
  rows(report.overall);
}

}  // namespace

void render_report(const EvalReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::Human) {
    render_human(report, out);
  } else {
    render_kv(report, out);
  }
}

}  // namespace nereval
