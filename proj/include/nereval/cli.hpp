// Command dispatch for the nereval tool; every command is a thin adapter
// over the library operations.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nereval/scoring.hpp"
#include "nereval/types.hpp"

namespace nereval {

struct RunConfig {
  enum class Command { Eval, Stats, Convert, Baseline, Significance, Vote, Select };

  Command command = Command::Eval;
  std::vector<std::string> inputs;  // positional input paths
  std::string gold_path;            // --gold
  std::string pred_path;            // --pred (eval two-file mode)
  std::string train_path;           // --train (baseline)
  std::string lexicon_in;           // --lexicon (baseline: reuse saved lexicon)
  std::string lexicon_out;          // --save-lexicon
  std::string output_path;          // --output ("" = stdout)

  Scheme scheme = Scheme::IOB1;
  Scheme convert_to = Scheme::IOB2;  // convert: target scheme
  double beta = 1.0;
  std::size_t replicates = 250;
  double level = 0.90;
  std::uint64_t seed = 0;
  std::size_t beam = 9;
  unsigned threads = 1;

  bool strict = false;
  bool case_fold = false;
  bool include_docstart = false;
  bool trace = false;
  bool dump_replicates = false;
  ReportFormat format = ReportFormat::Human;
};

/// Runs one command. Primary report goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 on input/format errors, 1 on internal failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nereval
