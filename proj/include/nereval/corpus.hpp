// Column-format corpus model: parsing, serialization, span extraction and
// corpus statistics.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nereval/types.hpp"

namespace nereval {

struct Token {
  std::string word;
  std::vector<std::string> aux;  // middle columns (POS tag, chunk tag, ...)
  NeTag tag;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<NeTag> tags() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// One article. `docstart` holds the raw columns of the sentinel line that
// opened it (empty for the implicit first document of sentinel-free input).
struct Document {
  std::vector<std::string> docstart;
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t sentence_count() const;
  std::size_t token_count() const;  // sentinel lines are not tokens
  /// Flattened sentence view across all documents, in file order.
  std::vector<const Sentence*> sentences() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Per-sentence tag sequences aligned with a corpus's flattened sentences.
using TagMatrix = std::vector<std::vector<NeTag>>;

// A typed contiguous token range; the unit of exact-match scoring.
struct EntitySpan {
  std::size_t sentence_index = 0;
  std::size_t start = 0;  // token index, inclusive
  std::size_t end = 0;    // token index, inclusive
  EntityType type;

  friend auto operator<=>(const EntitySpan&, const EntitySpan&) = default;
};

struct CorpusStats {
  std::size_t articles = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::map<EntityType, std::size_t> entities_per_type;

  std::size_t entity_count() const;
};

inline constexpr std::string_view kDocumentSentinel = "-DOCSTART-";

struct ParseOptions {
  std::optional<std::size_t> expected_columns;
  std::string source_name = "<input>";
};

/// Reads a column file: one token per line, columns split on runs of spaces
/// or tabs, blank lines between sentences, "-DOCSTART-" lines between
/// documents. The last column of each token line is the tag. Empty input
/// yields an empty corpus.
Corpus parse_corpus(std::istream& in, const ParseOptions& options = {});

// A file carrying gold tags in the second-to-last column and predicted tags
// in the last column (the single-file evaluation convention).
struct DualTagged {
  Corpus gold;
  TagMatrix predicted;
};

DualTagged parse_dual_tagged(std::istream& in, const ParseOptions& options = {});

/// Writes one token per line, single-space separated, one blank line after
/// each sentence, sentinel line between documents. parse(serialize(c)) == c.
void serialize_corpus(const Corpus& corpus, std::ostream& out);

/// Serializes `corpus` with `tags` appended as an extra final column
/// (append == true) or substituted for the tag column (append == false).
void serialize_with_tags(const Corpus& corpus, const TagMatrix& tags,
                         std::ostream& out, bool append = true);

TagMatrix corpus_tags(const Corpus& corpus);

/// Throws AlignmentError naming the first divergent sentence.
void check_shape(const Corpus& corpus, const TagMatrix& tags);

/// Extracts maximal typed spans from one tag sequence. Lenient mode repairs
/// scheme violations (a dangling I-XXX starts a span); strict mode throws
/// SchemeError with the offending position. Results are sorted and
/// non-overlapping, with sentence_index stamped on every span.
std::vector<EntitySpan> tags_to_spans(const std::vector<NeTag>& tags,
                                      Scheme scheme,
                                      Strictness strictness = Strictness::Lenient,
                                      std::size_t sentence_index = 0);

/// Inverse of tags_to_spans. Spans must be sorted, non-overlapping and within
/// [0, length); violations throw std::invalid_argument.
std::vector<NeTag> spans_to_tags(const std::vector<EntitySpan>& spans,
                                 std::size_t length, Scheme scheme);

/// Re-serializes a tag sequence from one scheme into another, preserving the
/// span set exactly.
std::vector<NeTag> convert_scheme(const std::vector<NeTag>& tags, Scheme from,
                                  Scheme to,
                                  Strictness strictness = Strictness::Lenient);

/// Lenient span extraction followed by re-serialization in the same scheme;
/// output is always a valid tag sequence.
std::vector<NeTag> repair_tags(const std::vector<NeTag>& tags, Scheme scheme);
TagMatrix repair_tags(const TagMatrix& tags, Scheme scheme);

/// All spans of the corpus with flattened sentence indices.
std::vector<EntitySpan> corpus_spans(const Corpus& corpus, Scheme scheme,
                                     Strictness strictness = Strictness::Lenient);

/// Article/sentence/token counts and per-type entity counts. Sentinel lines
/// count toward `tokens` only when include_docstart is set.
CorpusStats corpus_stats(const Corpus& corpus, Scheme scheme,
                         bool include_docstart = false,
                         Strictness strictness = Strictness::Lenient);

}  // namespace nereval
