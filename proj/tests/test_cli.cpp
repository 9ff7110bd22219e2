#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "nereval/cli.hpp"
#include "nereval/corpus.hpp"
#include "nereval/scoring.hpp"

using namespace nereval;

namespace {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("nereval_test_" + std::to_string(++counter) + "_" +
            std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::string file(const std::string& name, const std::string& contents) const {
    std::filesystem::path p = path / name;
    std::ofstream out(p);
    out << contents;
    return p.string();
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
};

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_config(const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  RunResult result;
  result.code = run(config, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

const char* kPerfectEval =
    "U.N. NNP I-ORG I-ORG\n"
    "official NN O O\n"
    "Ekeus NNP I-PER I-PER\n"
    "heads VBZ O O\n"
    "for IN O O\n"
    "Baghdad NNP I-LOC I-LOC\n"
    ". . O O\n";

const char* kGoldFile =
    "a NNP I-PER\n"
    "b NNP O\n"
    "\n"
    "c NNP I-LOC\n"
    "d NNP I-LOC\n";

}  // namespace

TEST_CASE("eval on identical gold and prediction columns") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Eval;
  config.inputs = {dir.file("perfect.txt", kPerfectEval)};
  config.format = ReportFormat::KeyValue;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(result.out.find("overall.f 100.00\n") != std::string::npos);
  CHECK(result.err.empty());
}

TEST_CASE("eval reports malformed tags with file and line, exit 2") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Eval;
  config.strict = true;
  std::string path = dir.file("bad.txt", "a NNP O O\nb NNP X-PER O\n");
  config.inputs = {path};
  RunResult result = run_config(config);
  CHECK(result.code == 2);
  CHECK(result.err.find(path + ":2: malformed tag 'X-PER'") != std::string::npos);
  CHECK(result.out.empty());
}

TEST_CASE("eval in strict mode rejects scheme violations") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Eval;
  config.inputs = {dir.file("dangling.txt", "a NNP O O\nb NNP O B-PER\n")};
  RunResult lenient = run_config(config);
  CHECK(lenient.code == 0);
  config.strict = true;
  RunResult strict = run_config(config);
  CHECK(strict.code == 2);
  CHECK(strict.err.find("token 1") != std::string::npos);
}

TEST_CASE("eval two-file mode equals the library scorer") {
  TempDir dir;
  std::string gold_path = dir.file("gold.txt", kGoldFile);
  std::string pred_path = dir.file("pred.txt",
                                   "a NNP I-PER\n"
                                   "b NNP O\n"
                                   "\n"
                                   "c NNP I-LOC\n"
                                   "d NNP O\n");
  RunConfig config;
  config.command = RunConfig::Command::Eval;
  config.gold_path = gold_path;
  config.pred_path = pred_path;
  config.format = ReportFormat::KeyValue;
  RunResult result = run_config(config);
  REQUIRE(result.code == 0);

  std::ifstream gold_in(gold_path);
  Corpus gold = parse_corpus(gold_in);
  std::ifstream pred_in(pred_path);
  Corpus pred = parse_corpus(pred_in);
  EvalReport report = score(gold, corpus_tags(pred), Scheme::IOB1);
  std::ostringstream expected;
  render_report(report, expected, ReportFormat::KeyValue);
  CHECK(result.out == expected.str());
}

TEST_CASE("eval rejects misaligned two-file input with exit 2") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Eval;
  config.gold_path = dir.file("gold.txt", kGoldFile);
  config.pred_path = dir.file("pred.txt", "a NNP O\n");
  RunResult result = run_config(config);
  CHECK(result.code == 2);
  CHECK(result.err.find("not aligned") != std::string::npos);
}

TEST_CASE("missing input file exits 2") {
  RunConfig config;
  config.command = RunConfig::Command::Stats;
  config.inputs = {"/nonexistent/never-here.txt"};
  RunResult result = run_config(config);
  CHECK(result.code == 2);
  CHECK(result.err.find("cannot open") != std::string::npos);
}

TEST_CASE("stats command matches corpus_stats") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Stats;
  config.inputs = {dir.file("gold.txt", kGoldFile)};
  config.format = ReportFormat::KeyValue;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(result.out ==
        "articles 1\nsentences 2\ntokens 4\nentities.total 2\n"
        "entities.LOC 1\nentities.PER 1\n");
}

TEST_CASE("stats counts sentinel tokens only with --include-docstart") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Stats;
  config.inputs = {dir.file("doc.txt", std::string("-DOCSTART- -X- O\n\n") + kGoldFile)};
  config.format = ReportFormat::KeyValue;
  RunResult plain = run_config(config);
  CHECK(plain.out.find("tokens 4\n") != std::string::npos);
  config.include_docstart = true;
  RunResult with_sentinel = run_config(config);
  CHECK(with_sentinel.out.find("tokens 5\n") != std::string::npos);
  CHECK(with_sentinel.out.find("sentences 2\n") != std::string::npos);
}

TEST_CASE("convert command rewrites tags in the target scheme") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Convert;
  config.inputs = {dir.file("gold.txt", kGoldFile)};
  config.scheme = Scheme::IOB1;
  config.convert_to = Scheme::IOB2;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(result.out ==
        "a NNP B-PER\nb NNP O\n\nc NNP B-LOC\nd NNP I-LOC\n\n");
}

TEST_CASE("convert does not mutate its input file") {
  TempDir dir;
  std::string path = dir.file("gold.txt", kGoldFile);
  RunConfig config;
  config.command = RunConfig::Command::Convert;
  config.inputs = {path};
  run_config(config);
  CHECK(dir.read("gold.txt") == kGoldFile);
}

TEST_CASE("baseline command tags with a trained lexicon") {
  TempDir dir;
  RunConfig config;
  config.command = RunConfig::Command::Baseline;
  config.train_path = dir.file("train.txt",
                               "Ekeus NNP I-PER\n"
                               "visits VBZ O\n"
                               "Baghdad NNP I-LOC\n");
  config.inputs = {dir.file("test.txt",
                            "Baghdad NNP O\n"
                            "today RB O\n")};
  std::filesystem::path lex_path;
  SUBCASE("tagging output is appended as a final column") {
    RunResult result = run_config(config);
    CHECK(result.code == 0);
    CHECK(result.out == "Baghdad NNP O I-LOC\ntoday RB O O\n\n");
    CHECK(result.err.find("lexicon entries: 2") != std::string::npos);
  }
  SUBCASE("saved lexicon can be reloaded instead of training") {
    config.lexicon_out = (dir.path / "lex.txt").string();
    RunResult trained = run_config(config);
    REQUIRE(trained.code == 0);
    CHECK(dir.read("lex.txt") == "Baghdad\tLOC\nEkeus\tPER\n");
    RunConfig reuse = config;
    reuse.train_path.clear();
    reuse.lexicon_out.clear();
    reuse.lexicon_in = (dir.path / "lex.txt").string();
    RunResult reloaded = run_config(reuse);
    CHECK(reloaded.code == 0);
    CHECK(reloaded.out == trained.out);
  }
  SUBCASE("baseline without a lexicon source is a usage error") {
    config.train_path.clear();
    RunResult result = run_config(config);
    CHECK(result.code == 2);
  }
}

TEST_CASE("significance command is deterministic for a fixed seed") {
  TempDir dir;
  std::string gold = dir.file("gold.txt", kGoldFile);
  std::string sys_a = dir.file("a.txt",
                               "a NNP I-PER\nb NNP O\n\nc NNP O\nd NNP I-LOC\n");
  std::string sys_b = dir.file("b.txt",
                               "a NNP O\nb NNP I-PER\n\nc NNP I-LOC\nd NNP I-LOC\n");
  RunConfig config;
  config.command = RunConfig::Command::Significance;
  config.gold_path = gold;
  config.inputs = {sys_a, sys_b};
  config.seed = 7;
  config.replicates = 50;
  config.format = ReportFormat::KeyValue;
  config.dump_replicates = true;
  RunResult first = run_config(config);
  RunResult second = run_config(config);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("seed 7\n") != std::string::npos);
  CHECK(first.out.find("replicate.49 ") != std::string::npos);
  CHECK(first.out.find("significant ") != std::string::npos);

  config.threads = 4;
  RunResult threaded = run_config(config);
  CHECK(threaded.out == first.out);
}

TEST_CASE("vote command combines systems and writes a scoreable file") {
  TempDir dir;
  std::string gold = dir.file("gold.txt", kGoldFile);
  std::string s1 = dir.file("s1.txt", kGoldFile);
  std::string s2 = dir.file("s2.txt",
                            "a NNP O\nb NNP O\n\nc NNP I-LOC\nd NNP I-LOC\n");
  std::string s3 = dir.file("s3.txt",
                            "a NNP I-PER\nb NNP O\n\nc NNP O\nd NNP O\n");
  RunConfig config;
  config.command = RunConfig::Command::Vote;
  config.gold_path = gold;
  config.inputs = {s1, s2, s3};
  config.output_path = (dir.path / "combined.txt").string();
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  // every token's majority matches the gold column here
  CHECK(dir.read("combined.txt") ==
        "a NNP I-PER I-PER\nb NNP O O\n\nc NNP I-LOC I-LOC\nd NNP I-LOC I-LOC\n\n");
  CHECK(result.err.find("combined F vs gold: 100.00") != std::string::npos);
}

TEST_CASE("select command reports the chosen subset") {
  TempDir dir;
  std::string gold = dir.file("gold.txt", kGoldFile);
  std::string s1 = dir.file("s1.txt", kGoldFile);
  std::string s2 = dir.file("s2.txt",
                            "a NNP O\nb NNP I-PER\n\nc NNP O\nd NNP I-LOC\n");
  RunConfig config;
  config.command = RunConfig::Command::Select;
  config.gold_path = gold;
  config.inputs = {s1, s2};
  config.format = ReportFormat::KeyValue;
  config.trace = true;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(result.out.find("subset " + s1 + "\n") != std::string::npos);
  CHECK(result.out.find("dev_f 100.00\n") != std::string::npos);
  CHECK(result.err.find("iter 1:") != std::string::npos);
  SUBCASE("duplicate prediction files are rejected") {
    config.inputs = {s1, s1};
    CHECK(run_config(config).code == 2);
  }
}

#ifdef NEREVAL_BIN

namespace {

int shell(const std::string& command) {
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("binary: eval exits 0 and prints the report") {
  TempDir dir;
  std::string input = dir.file("perfect.txt", kPerfectEval);
  std::string out_path = (dir.path / "out.txt").string();
  int code = shell(std::string(NEREVAL_BIN) + " eval " + input + " --format=kv > " +
                   out_path + " 2>/dev/null");
  CHECK(code == 0);
  CHECK(dir.read("out.txt").find("overall.f 100.00\n") != std::string::npos);
}

TEST_CASE("binary: malformed tag in strict mode exits 2 with a line number") {
  TempDir dir;
  std::string input = dir.file("bad.txt", "a NNP O O\nb NNP X-PER O\n");
  std::string err_path = (dir.path / "err.txt").string();
  int code = shell(std::string(NEREVAL_BIN) + " eval " + input +
                   " --strict > /dev/null 2> " + err_path);
  CHECK(code == 2);
  CHECK(dir.read("err.txt").find(":2: malformed tag 'X-PER'") != std::string::npos);
}

TEST_CASE("binary: significance runs are byte-identical for one seed") {
  TempDir dir;
  std::string gold = dir.file("gold.txt", kGoldFile);
  std::string sys_a = dir.file("a.txt",
                               "a NNP I-PER\nb NNP O\n\nc NNP O\nd NNP I-LOC\n");
  std::string sys_b = dir.file("b.txt",
                               "a NNP O\nb NNP I-PER\n\nc NNP I-LOC\nd NNP I-LOC\n");
  const std::string command = std::string(NEREVAL_BIN) + " significance " + sys_a + ' ' +
                              sys_b + " --gold " + gold +
                              " --seed 11 --replicates 40 --format=kv --dump-replicates";
  int first = shell(command + " > " + (dir.path / "run1.txt").string() + " 2>/dev/null");
  int second = shell(command + " > " + (dir.path / "run2.txt").string() + " 2>/dev/null");
  CHECK(first == 0);
  CHECK(second == 0);
  const std::string run1 = dir.read("run1.txt");
  CHECK(!run1.empty());
  CHECK(run1 == dir.read("run2.txt"));
}

TEST_CASE("binary: usage errors exit 2, help exits 0") {
  CHECK(shell(std::string(NEREVAL_BIN) + " --help > /dev/null 2>&1") == 0);
  CHECK(shell(std::string(NEREVAL_BIN) + " frobnicate > /dev/null 2>&1") == 2);
  CHECK(shell(std::string(NEREVAL_BIN) + " significance only-one --gold g > /dev/null 2>&1") == 2);
}

#endif  // NEREVAL_BIN
