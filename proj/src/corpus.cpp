#include "nereval/corpus.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace nereval {

namespace {

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> columns;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) columns.push_back(line.substr(start, i - start));
  }
  return columns;
}

[[noreturn]] void parse_fail(const ParseOptions& options, std::size_t line_no,
                             const std::string& message) {
  std::ostringstream os;
  os << options.source_name << ":" << line_no << ": " << message;
  throw ParseError(os.str());
}

// Shared walker for the one-tag and two-tag layouts. When tag_columns == 2
// the last column goes into `extra` (per sentence) and the column before it
// becomes the token's tag.
struct ParsedInput {
  Corpus corpus;
  TagMatrix extra;
};

ParsedInput parse_impl(std::istream& in, const ParseOptions& options, int tag_columns) {
  ParsedInput result;
  Document doc;
  Sentence sent;
  std::vector<NeTag> sent_extra;

  auto flush_sentence = [&] {
    if (sent.tokens.empty()) return;
    doc.sentences.push_back(std::move(sent));
    sent = {};
    if (tag_columns == 2) {
      result.extra.push_back(std::move(sent_extra));
      sent_extra = {};
    }
  };
  auto flush_document = [&] {
    flush_sentence();
    if (!doc.docstart.empty() || !doc.sentences.empty()) {
      result.corpus.documents.push_back(std::move(doc));
    }
    doc = {};
  };

  std::string line;
  std::size_t line_no = 0;
  const std::size_t min_columns = tag_columns == 2 ? 3 : 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> columns = split_columns(line);
    if (columns.empty()) {
      flush_sentence();
      continue;
    }
    if (columns.front() == kDocumentSentinel) {
      flush_document();
      doc.docstart = std::move(columns);
      continue;
    }
    if (options.expected_columns && columns.size() != *options.expected_columns) {
      std::ostringstream os;
      os << "expected " << *options.expected_columns << " columns, found " << columns.size();
      parse_fail(options, line_no, os.str());
    }
    if (columns.size() < min_columns) {
      std::ostringstream os;
      os << "expected at least " << min_columns << " columns, found " << columns.size();
      parse_fail(options, line_no, os.str());
    }
    NeTag tag;
    const std::string& tag_text = columns[columns.size() - tag_columns];
    if (!NeTag::try_parse(tag_text, tag)) {
      parse_fail(options, line_no, "malformed tag '" + tag_text + "'");
    }
    if (tag_columns == 2) {
      NeTag pred;
      if (!NeTag::try_parse(columns.back(), pred)) {
        parse_fail(options, line_no, "malformed tag '" + columns.back() + "'");
      }
      sent_extra.push_back(std::move(pred));
    }
    Token token;
    token.word = std::move(columns.front());
    token.aux.assign(std::make_move_iterator(columns.begin() + 1),
                     std::make_move_iterator(columns.end() - tag_columns));
    token.tag = std::move(tag);
    sent.tokens.push_back(std::move(token));
  }
  flush_document();
  return result;
}

void write_token_line(std::ostream& out, const Token& token) {
  out << token.word;
  for (const std::string& column : token.aux) out << ' ' << column;
  out << ' ' << token.tag.str();
}

}  // namespace

std::vector<NeTag> Sentence::tags() const {
  std::vector<NeTag> result;
  result.reserve(tokens.size());
  for (const Token& token : tokens) result.push_back(token.tag);
  return result;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const Document& doc : documents) n += doc.sentences.size();
  return n;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const Document& doc : documents) {
    for (const Sentence& sentence : doc.sentences) n += sentence.size();
  }
  return n;
}

std::vector<const Sentence*> Corpus::sentences() const {
  std::vector<const Sentence*> result;
  result.reserve(sentence_count());
  for (const Document& doc : documents) {
    for (const Sentence& sentence : doc.sentences) result.push_back(&sentence);
  }
  return result;
}

std::size_t CorpusStats::entity_count() const {
  std::size_t n = 0;
  for (const auto& [type, count] : entities_per_type) n += count;
  return n;
}

Corpus parse_corpus(std::istream& in, const ParseOptions& options) {
  return parse_impl(in, options, 1).corpus;
}

DualTagged parse_dual_tagged(std::istream& in, const ParseOptions& options) {
  ParsedInput parsed = parse_impl(in, options, 2);
  return {std::move(parsed.corpus), std::move(parsed.extra)};
}

void serialize_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Document& doc : corpus.documents) {
    if (!doc.docstart.empty()) {
      for (std::size_t i = 0; i < doc.docstart.size(); ++i) {
        if (i > 0) out << ' ';
        out << doc.docstart[i];
      }
      out << "\n\n";
    }
    for (const Sentence& sentence : doc.sentences) {
      for (const Token& token : sentence.tokens) {
        write_token_line(out, token);
        out << '\n';
      }
      out << '\n';
    }
  }
}

void serialize_with_tags(const Corpus& corpus, const TagMatrix& tags,
                         std::ostream& out, bool append) {
  check_shape(corpus, tags);
  std::size_t index = 0;
  for (const Document& doc : corpus.documents) {
    if (!doc.docstart.empty()) {
      for (std::size_t i = 0; i < doc.docstart.size(); ++i) {
        if (i > 0) out << ' ';
        out << doc.docstart[i];
      }
      out << "\n\n";
    }
    for (const Sentence& sentence : doc.sentences) {
      const std::vector<NeTag>& row = tags[index++];
      for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
        const Token& token = sentence.tokens[t];
        if (append) {
          write_token_line(out, token);
        } else {
          out << token.word;
          for (const std::string& column : token.aux) out << ' ' << column;
        }
        out << ' ' << row[t].str() << '\n';
      }
      out << '\n';
    }
  }
}

TagMatrix corpus_tags(const Corpus& corpus) {
  TagMatrix result;
  result.reserve(corpus.sentence_count());
  for (const Sentence* sentence : corpus.sentences()) result.push_back(sentence->tags());
  return result;
}

void check_shape(const Corpus& corpus, const TagMatrix& tags) {
  std::vector<const Sentence*> sentences = corpus.sentences();
  if (tags.size() != sentences.size()) {
    std::ostringstream os;
    os << "corpus has " << sentences.size() << " sentences but tags cover " << tags.size();
    throw AlignmentError(os.str());
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (tags[i].size() != sentences[i]->size()) {
      std::ostringstream os;
      os << "sentence " << i << ": corpus has " << sentences[i]->size()
         << " tokens but tags cover " << tags[i].size();
      throw AlignmentError(os.str());
    }
  }
}

std::vector<EntitySpan> tags_to_spans(const std::vector<NeTag>& tags, Scheme scheme,
                                      Strictness strictness, std::size_t sentence_index) {
  std::vector<EntitySpan> spans;
  bool in_span = false;
  std::size_t span_start = 0;
  EntityType span_type;

  auto flush = [&](std::size_t end) {
    if (in_span) spans.push_back({sentence_index, span_start, end, span_type});
    in_span = false;
  };
  auto violation = [&](std::size_t position, const std::string& what) {
    std::ostringstream os;
    os << "sentence " << sentence_index << ", token " << position << ": " << what;
    throw SchemeError(os.str());
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    const NeTag& tag = tags[i];
    if (tag.kind == TagKind::Outside) {
      flush(i - 1);
      continue;
    }
    const bool continues = in_span && span_type == tag.type;
    if (tag.kind == TagKind::Begin) {
      // IOB1 reserves B-XXX for splitting adjacent same-type entities.
      if (strictness == Strictness::Strict && scheme == Scheme::IOB1 && !continues) {
        violation(i, "B-" + tag.type + " does not follow an entity of type " + tag.type);
      }
      flush(i - 1);
      in_span = true;
      span_start = i;
      span_type = tag.type;
    } else {  // Inside
      if (continues) continue;
      if (strictness == Strictness::Strict && scheme == Scheme::IOB2) {
        violation(i, "I-" + tag.type + " does not continue an entity of type " + tag.type);
      }
      flush(i - 1);
      in_span = true;
      span_start = i;
      span_type = tag.type;
    }
  }
  if (!tags.empty()) flush(tags.size() - 1);
  return spans;
}

std::vector<NeTag> spans_to_tags(const std::vector<EntitySpan>& spans,
                                 std::size_t length, Scheme scheme) {
  std::vector<NeTag> tags(length, NeTag::outside());
  const EntitySpan* prev = nullptr;
  for (const EntitySpan& span : spans) {
    if (span.start > span.end || span.end >= length) {
      std::ostringstream os;
      os << "span [" << span.start << ", " << span.end << "] out of range for length " << length;
      throw std::invalid_argument(os.str());
    }
    if (prev != nullptr && span.start <= prev->end) {
      std::ostringstream os;
      os << "spans overlap or are unsorted at [" << span.start << ", " << span.end << "]";
      throw std::invalid_argument(os.str());
    }
    const bool adjacent_same_type =
        prev != nullptr && prev->end + 1 == span.start && prev->type == span.type;
    const bool begin = scheme == Scheme::IOB2 || adjacent_same_type;
    tags[span.start] = begin ? NeTag::begin(span.type) : NeTag::inside(span.type);
    for (std::size_t i = span.start + 1; i <= span.end; ++i) {
      tags[i] = NeTag::inside(span.type);
    }
    prev = &span;
  }
  return tags;
}

std::vector<NeTag> convert_scheme(const std::vector<NeTag>& tags, Scheme from,
                                  Scheme to, Strictness strictness) {
  return spans_to_tags(tags_to_spans(tags, from, strictness), tags.size(), to);
}

std::vector<NeTag> repair_tags(const std::vector<NeTag>& tags, Scheme scheme) {
  return spans_to_tags(tags_to_spans(tags, scheme), tags.size(), scheme);
}

TagMatrix repair_tags(const TagMatrix& tags, Scheme scheme) {
  TagMatrix result;
  result.reserve(tags.size());
  for (const std::vector<NeTag>& row : tags) result.push_back(repair_tags(row, scheme));
  return result;
}

std::vector<EntitySpan> corpus_spans(const Corpus& corpus, Scheme scheme,
                                     Strictness strictness) {
  std::vector<EntitySpan> spans;
  std::size_t index = 0;
  for (const Sentence* sentence : corpus.sentences()) {
    std::vector<EntitySpan> sent_spans = tags_to_spans(sentence->tags(), scheme, strictness, index);
    spans.insert(spans.end(), sent_spans.begin(), sent_spans.end());
    ++index;
  }
  return spans;
}

CorpusStats corpus_stats(const Corpus& corpus, Scheme scheme, bool include_docstart,
                         Strictness strictness) {
  CorpusStats stats;
  stats.articles = corpus.documents.size();
  stats.sentences = corpus.sentence_count();
  stats.tokens = corpus.token_count();
  if (include_docstart) {
    for (const Document& doc : corpus.documents) {
      if (!doc.docstart.empty()) ++stats.tokens;
    }
  }
  for (const EntitySpan& span : corpus_spans(corpus, scheme, strictness)) {
    ++stats.entities_per_type[span.type];
  }
  return stats;
}

}  // namespace nereval
