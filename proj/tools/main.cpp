// nereval: evaluate, combine and analyze named-entity tagger outputs in
// column format.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nereval/cli.hpp"
#include "nereval/types.hpp"

namespace {

using nereval::RunConfig;

void add_scheme_option(CLI::App* cmd, nereval::Scheme& target, const char* name,
                       const char* description) {
  cmd->add_option_function<std::string>(
         name,
         [&target](const std::string& value) {
           target = nereval::scheme_from_string(value);
         },
         description)
      ->check(CLI::IsMember({"IOB1", "IOB2", "iob1", "iob2"}));
}

void add_common_options(CLI::App* cmd, RunConfig& config) {
  add_scheme_option(cmd, config.scheme, "--scheme", "Tagging scheme (default IOB1)");
  cmd->add_flag("--strict", config.strict, "Reject scheme violations instead of repairing");
  cmd->add_option_function<std::string>(
         "--format",
         [&config](const std::string& value) {
           config.format = value == "kv" ? nereval::ReportFormat::KeyValue
                                         : nereval::ReportFormat::Human;
         },
         "Output format: human (default) or kv")
      ->check(CLI::IsMember({"human", "kv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-match evaluation, baseline tagging, significance testing and\n"
               "ensemble combination for column-format named-entity tagger outputs."};
  app.require_subcommand(1);

  RunConfig config;

  CLI::App* eval = app.add_subcommand(
      "eval", "Score predictions against gold entities (exact match)");
  eval->add_option("file", config.inputs,
                   "Combined file: second-to-last column gold, last column prediction");
  eval->add_option("--gold", config.gold_path, "Gold corpus file (two-file mode)");
  eval->add_option("--pred", config.pred_path, "Prediction file (two-file mode)");
  eval->add_option("--beta", config.beta, "F-beta weight (default 1)")
      ->check(CLI::PositiveNumber);
  add_common_options(eval, config);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("file", config.inputs, "Corpus file")->required();
  stats->add_flag("--include-docstart", config.include_docstart,
                  "Count sentinel lines in the token total");
  add_common_options(stats, config);

  CLI::App* convert = app.add_subcommand("convert", "Re-serialize tags in another scheme");
  convert->add_option("file", config.inputs, "Corpus file")->required();
  add_scheme_option(convert, config.scheme, "--from", "Source scheme (default IOB1)");
  add_scheme_option(convert, config.convert_to, "--to", "Target scheme (default IOB2)");
  convert->add_option("--output,-o", config.output_path, "Output file (default stdout)");
  convert->add_flag("--strict", config.strict, "Reject scheme violations instead of repairing");

  CLI::App* baseline = app.add_subcommand(
      "baseline", "Tag a file with the unique-class longest-match baseline");
  baseline->add_option("file", config.inputs, "File to tag")->required();
  baseline->add_option("--train", config.train_path, "Training corpus with gold tags");
  baseline->add_option("--lexicon", config.lexicon_in, "Load a saved lexicon instead of training");
  baseline->add_option("--save-lexicon", config.lexicon_out, "Write the lexicon to this file");
  baseline->add_option("--output,-o", config.output_path, "Output file (default stdout)");
  baseline->add_flag("--case-fold", config.case_fold, "Match phrases case-insensitively");
  add_common_options(baseline, config);

  CLI::App* significance = app.add_subcommand(
      "significance", "Bootstrap test: is system A outside the central interval of B?");
  significance->add_option("systems", config.inputs, "System A file, then system B file")
      ->expected(2);
  significance->add_option("--gold", config.gold_path, "Gold corpus file")->required();
  significance->add_option("--replicates", config.replicates,
                           "Bootstrap replicates (default 250)")
      ->check(CLI::PositiveNumber);
  significance->add_option("--level", config.level, "Central interval level (default 0.90)")
      ->check(CLI::Range(0.0, 1.0));
  significance->add_option("--seed", config.seed, "Random seed (default 0)");
  significance->add_option("--beta", config.beta, "F-beta weight (default 1)")
      ->check(CLI::PositiveNumber);
  significance->add_option("--threads", config.threads,
                           "Worker threads for replicate evaluation (default 1)");
  significance->add_flag("--dump-replicates", config.dump_replicates,
                         "Include every replicate F value (kv format)");
  add_common_options(significance, config);

  CLI::App* vote = app.add_subcommand("vote", "Combine system outputs by per-token majority vote");
  vote->add_option("systems", config.inputs, "Prediction files")->required();
  vote->add_option("--gold", config.gold_path, "Gold corpus file")->required();
  vote->add_option("--output,-o", config.output_path, "Combined output file (default stdout)");
  add_common_options(vote, config);

  CLI::App* select = app.add_subcommand(
      "select", "Pick the best system subset by beam search on development F");
  select->add_option("systems", config.inputs, "Prediction files")->required();
  select->add_option("--gold", config.gold_path, "Development gold file")->required();
  select->add_option("--beam", config.beam, "Beam size (default 9)")
      ->check(CLI::PositiveNumber);
  select->add_option("--output,-o", config.output_path, "Write the combined output here");
  select->add_flag("--trace", config.trace, "Log beam contents per iteration to stderr");
  add_common_options(select, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (eval->parsed()) config.command = RunConfig::Command::Eval;
  if (stats->parsed()) config.command = RunConfig::Command::Stats;
  if (convert->parsed()) config.command = RunConfig::Command::Convert;
  if (baseline->parsed()) config.command = RunConfig::Command::Baseline;
  if (significance->parsed()) config.command = RunConfig::Command::Significance;
  if (vote->parsed()) config.command = RunConfig::Command::Vote;
  if (select->parsed()) config.command = RunConfig::Command::Select;

  return nereval::run(config, std::cout, std::cerr);
}
