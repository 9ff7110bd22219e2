#include "nereval/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nereval/baseline.hpp"
#include "nereval/corpus.hpp"
#include "nereval/ensemble.hpp"
#include "nereval/significance.hpp"

namespace nereval {

namespace {

// Bad command-line usage; reported like any other input error (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in = open_input(path);
  ParseOptions options;
  options.source_name = path;
  return parse_corpus(in, options);
}

TagMatrix load_system_tags(const std::string& path, const Corpus& gold) {
  Corpus predicted = load_corpus(path);
  TagMatrix tags = corpus_tags(predicted);
  try {
    check_shape(gold, tags);
  } catch (const AlignmentError& e) {
    throw AlignmentError("'" + path + "' is not aligned with the gold corpus: " +
                         std::string(e.what()));
  }
  return tags;
}

std::vector<SystemOutput> load_system_outputs(const std::vector<std::string>& paths,
                                              const Corpus& gold, Scheme scheme) {
  std::vector<SystemOutput> outputs;
  outputs.reserve(paths.size());
  for (const std::string& path : paths) {
    outputs.push_back({path, repair_tags(load_system_tags(path, gold), scheme)});
  }
  return outputs;
}

std::ostream& select_output(const RunConfig& config, std::ostream& fallback,
                            std::ofstream& file) {
  if (config.output_path.empty()) return fallback;
  file.open(config.output_path);
  if (!file) throw IoError("cannot write '" + config.output_path + "'");
  return file;
}

void require_inputs(const RunConfig& config, std::size_t count, const char* what) {
  if (config.inputs.size() != count) {
    std::ostringstream os;
    os << "expected " << count << " input file" << (count == 1 ? "" : "s") << " (" << what
       << "), got " << config.inputs.size();
    throw UsageError(os.str());
  }
}

void validate_numbers(const RunConfig& config) {
  if (config.beta <= 0.0) throw UsageError("--beta must be positive");
  if (config.level <= 0.0 || config.level >= 1.0) {
    throw UsageError("--level must be strictly between 0 and 1");
  }
  if (config.replicates < 1) throw UsageError("--replicates must be at least 1");
  if (config.beam < 1) throw UsageError("--beam must be at least 1");
}

std::string join_ids(const std::vector<std::string>& ids, char sep) {
  std::string joined;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) joined += sep;
    joined += ids[i];
  }
  return joined;
}

int run_eval(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Strictness strictness = config.strict ? Strictness::Strict : Strictness::Lenient;
  Corpus gold;
  TagMatrix predicted;
  if (!config.gold_path.empty() || !config.pred_path.empty()) {
    if (config.gold_path.empty() || config.pred_path.empty()) {
      throw UsageError("--gold and --pred must be given together");
    }
    if (!config.inputs.empty()) {
      throw UsageError("give either one combined file or --gold/--pred, not both");
    }
    gold = load_corpus(config.gold_path);
    predicted = load_system_tags(config.pred_path, gold);
  } else {
    require_inputs(config, 1, "combined gold+prediction file");
    std::ifstream in = open_input(config.inputs.front());
    ParseOptions options;
    options.source_name = config.inputs.front();
    DualTagged dual = parse_dual_tagged(in, options);
    gold = std::move(dual.gold);
    predicted = std::move(dual.predicted);
  }
  EvalReport report = score(gold, predicted, config.scheme, config.beta, strictness);
  render_report(report, out, config.format);
  return 0;
}

int run_stats(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Strictness strictness = config.strict ? Strictness::Strict : Strictness::Lenient;
  require_inputs(config, 1, "corpus file");
  Corpus corpus = load_corpus(config.inputs.front());
  CorpusStats stats =
      corpus_stats(corpus, config.scheme, config.include_docstart, strictness);
  if (config.format == ReportFormat::KeyValue) {
    out << "articles " << stats.articles << '\n';
    out << "sentences " << stats.sentences << '\n';
    out << "tokens " << stats.tokens << '\n';
    out << "entities.total " << stats.entity_count() << '\n';
    for (const auto& [type, count] : stats.entities_per_type) {
      out << "entities." << type << ' ' << count << '\n';
    }
  } else {
    out << "articles:  " << stats.articles << '\n';
    out << "sentences: " << stats.sentences << '\n';
    out << "tokens:    " << stats.tokens << '\n';
    out << "entities:  " << stats.entity_count() << '\n';
    for (const auto& [type, count] : stats.entities_per_type) {
      out << "  " << type << ": " << count << '\n';
    }
  }
  return 0;
}

int run_convert(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Strictness strictness = config.strict ? Strictness::Strict : Strictness::Lenient;
  require_inputs(config, 1, "corpus file");
  Corpus corpus = load_corpus(config.inputs.front());
  TagMatrix converted;
  converted.reserve(corpus.sentence_count());
  for (const Sentence* sentence : corpus.sentences()) {
    converted.push_back(
        convert_scheme(sentence->tags(), config.scheme, config.convert_to, strictness));
  }
  std::ofstream file;
  std::ostream& target = select_output(config, out, file);
  serialize_with_tags(corpus, converted, target, /*append=*/false);
  return 0;
}

int run_baseline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Strictness strictness = config.strict ? Strictness::Strict : Strictness::Lenient;
  require_inputs(config, 1, "file to tag");
  if (config.train_path.empty() && config.lexicon_in.empty()) {
    throw UsageError("baseline needs --train or --lexicon");
  }
  BaselineLexicon lexicon;
  if (!config.lexicon_in.empty()) {
    std::ifstream in = open_input(config.lexicon_in);
    lexicon = load_lexicon(in, !config.case_fold, config.lexicon_in);
  } else {
    lexicon =
        build_lexicon(load_corpus(config.train_path), config.scheme, !config.case_fold,
                      strictness);
  }
  if (!config.lexicon_out.empty()) {
    std::ofstream lex_out(config.lexicon_out);
    if (!lex_out) throw IoError("cannot write '" + config.lexicon_out + "'");
    save_lexicon(lexicon, lex_out);
  }
  Corpus input = load_corpus(config.inputs.front());
  TagMatrix tagged = tag_baseline(lexicon, input, config.scheme);
  std::ofstream file;
  std::ostream& target = select_output(config, out, file);
  serialize_with_tags(input, tagged, target, /*append=*/true);
  err << "lexicon entries: " << lexicon.size() << " (max phrase length "
      << lexicon.max_phrase_len << ")\n";
  return 0;
}

int run_significance(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Strictness strictness = config.strict ? Strictness::Strict : Strictness::Lenient;
  require_inputs(config, 2, "system A file, system B file");
  if (config.gold_path.empty()) throw UsageError("significance needs --gold");
  Corpus gold = load_corpus(config.gold_path);
  const std::string& a_path = config.inputs[0];
  const std::string& b_path = config.inputs[1];
  TagMatrix a_tags = load_system_tags(a_path, gold);
  TagMatrix b_tags = load_system_tags(b_path, gold);

  const double a_f =
      score(gold, a_tags, config.scheme, config.beta, strictness).overall.fbeta;
  BootstrapDistribution dist =
      bootstrap_distribution(gold, b_tags, config.replicates, config.seed,
                             config.scheme, config.beta, config.threads);
  dist.level = config.level;
  SignificanceVerdict verdict = compare(a_f, dist, config.level);

  if (config.format == ReportFormat::KeyValue) {
    out << "seed " << config.seed << '\n';
    out << "replicates " << config.replicates << '\n';
    out << "level " << format_fixed(config.level, 2) << '\n';
    out << "a.path " << a_path << '\n';
    out << "b.path " << b_path << '\n';
    out << "a.f " << format_fixed(verdict.a_point_f, 2) << '\n';
    out << "b.f " << format_fixed(dist.point_f, 2) << '\n';
    out << "b.interval.lo " << format_fixed(verdict.b_interval.lo, 2) << '\n';
    out << "b.interval.hi " << format_fixed(verdict.b_interval.hi, 2) << '\n';
    out << "b.margin " << format_fixed(verdict.margin, 1) << '\n';
    out << "significant " << (verdict.significant ? "true" : "false") << '\n';
    if (config.dump_replicates) {
      for (std::size_t i = 0; i < dist.f_values.size(); ++i) {
        out << "replicate." << i << ' ' << format_fixed(dist.f_values[i], 4) << '\n';
      }
    }
  } else {
    const std::string pct = format_fixed(config.level * 100.0, 0);
    out << "seed: " << config.seed << "  replicates: " << config.replicates
        << "  level: " << format_fixed(config.level, 2) << '\n';
    out << "A (" << a_path << "): F = " << format_fixed(verdict.a_point_f, 2) << '\n';
    out << "B (" << b_path << "): F = " << format_fixed(dist.point_f, 2) << " ± "
        << format_fixed(verdict.margin, 1) << "  central " << pct << "% interval ["
        << format_fixed(verdict.b_interval.lo, 2) << ", "
        << format_fixed(verdict.b_interval.hi, 2) << "]\n";
    if (verdict.significant) {
      out << "A is outside the central " << pct
          << "% of B's distribution: the difference is significant\n";
    } else {
      out << "A is within the central " << pct
          << "% of B's distribution: the difference is not significant\n";
    }
  }
  return 0;
}

int run_vote(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.inputs.empty()) throw UsageError("vote needs at least one prediction file");
  if (config.gold_path.empty()) throw UsageError("vote needs --gold");
  Corpus gold = load_corpus(config.gold_path);
  std::vector<SystemOutput> outputs =
      load_system_outputs(config.inputs, gold, config.scheme);
  std::vector<std::string> tie_order = rank_by_individual_f(outputs, gold, config.scheme);
  TagMatrix combined = majority_vote(outputs, tie_order, config.scheme);
  std::ofstream file;
  std::ostream& target = select_output(config, out, file);
  serialize_with_tags(gold, combined, target, /*append=*/true);
  err << "tie order: " << join_ids(tie_order, ' ') << '\n';
  err << "combined F vs gold: "
      << format_fixed(score(gold, combined, config.scheme).overall.fbeta, 2) << '\n';
  return 0;
}

int run_select(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.inputs.empty()) throw UsageError("select needs at least one prediction file");
  if (config.gold_path.empty()) throw UsageError("select needs --gold");
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    for (std::size_t j = i + 1; j < config.inputs.size(); ++j) {
      if (config.inputs[i] == config.inputs[j]) {
        throw UsageError("duplicate prediction file '" + config.inputs[i] + "'");
      }
    }
  }
  Corpus gold = load_corpus(config.gold_path);
  std::vector<SystemOutput> outputs =
      load_system_outputs(config.inputs, gold, config.scheme);
  SelectionResult result =
      hill_climb_select(outputs, gold, config.beam, {}, config.scheme);

  if (config.trace) {
    for (std::size_t i = 0; i < result.trace.iterations.size(); ++i) {
      const SearchTrace::Iteration& iteration = result.trace.iterations[i];
      err << "iter " << i + 1 << ": best " << join_ids(iteration.best.subset, '+') << '='
          << format_fixed(iteration.best.dev_f, 2) << " | beam:";
      for (const SearchState& state : iteration.beam) {
        err << ' ' << join_ids(state.subset, '+') << '='
            << format_fixed(state.dev_f, 2);
      }
      err << '\n';
    }
  }

  if (config.format == ReportFormat::KeyValue) {
    out << "subset " << join_ids(result.best.subset, ',') << '\n';
    out << "subset.size " << result.best.subset.size() << '\n';
    out << "dev_f " << format_fixed(result.best.dev_f, 2) << '\n';
    out << "iterations " << result.trace.iterations.size() << '\n';
  } else {
    out << "selected " << result.best.subset.size() << " of " << outputs.size()
        << " systems: " << join_ids(result.best.subset, ' ') << '\n';
    out << "dev F: " << format_fixed(result.best.dev_f, 2) << '\n';
  }

  if (!config.output_path.empty()) {
    std::vector<std::string> tie_order =
        rank_by_individual_f(outputs, gold, config.scheme);
    std::vector<SystemOutput> members;
    for (const SystemOutput& output : outputs) {
      if (std::find(result.best.subset.begin(), result.best.subset.end(),
                    output.system_id) != result.best.subset.end()) {
        members.push_back(output);
      }
    }
    TagMatrix combined = majority_vote(members, tie_order, config.scheme);
    std::ofstream file(config.output_path);
    if (!file) throw IoError("cannot write '" + config.output_path + "'");
    serialize_with_tags(gold, combined, file, /*append=*/true);
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_numbers(config);
    switch (config.command) {
      case RunConfig::Command::Eval: return run_eval(config, out, err);
      case RunConfig::Command::Stats: return run_stats(config, out, err);
      case RunConfig::Command::Convert: return run_convert(config, out, err);
      case RunConfig::Command::Baseline: return run_baseline(config, out, err);
      case RunConfig::Command::Significance: return run_significance(config, out, err);
      case RunConfig::Command::Vote: return run_vote(config, out, err);
      case RunConfig::Command::Select: return run_select(config, out, err);
    }
    err << "error: unknown command\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SchemeError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const AlignmentError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nereval
