#include "nereval/baseline.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace nereval {

namespace {

std::string fold_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string phrase_key(const std::vector<std::string>& words, std::size_t start,
                       std::size_t len, bool case_sensitive) {
  std::string key;
  for (std::size_t i = 0; i < len; ++i) {
    if (i > 0) key += ' ';
    key += words[start + i];
  }
  return case_sensitive ? key : fold_ascii(std::move(key));
}

std::size_t phrase_token_count(const std::string& key) {
  return static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
}

std::vector<std::string> sentence_words(const Sentence& sentence) {
  std::vector<std::string> words;
  words.reserve(sentence.size());
  for (const Token& token : sentence.tokens) words.push_back(token.word);
  return words;
}

}  // namespace

std::optional<EntityType> BaselineLexicon::lookup(const std::vector<std::string>& words,
                                                  std::size_t start,
                                                  std::size_t len) const {
  auto it = entries.find(phrase_key(words, start, len, case_sensitive));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

BaselineLexicon build_lexicon(const Corpus& training, Scheme scheme,
                              bool case_sensitive, Strictness strictness) {
  BaselineLexicon lexicon;
  lexicon.case_sensitive = case_sensitive;
  std::set<std::string> ambiguous;

  std::size_t index = 0;
  for (const Sentence* sentence : training.sentences()) {
    std::vector<std::string> words = sentence_words(*sentence);
    for (const EntitySpan& span :
         tags_to_spans(sentence->tags(), scheme, strictness, index)) {
      std::string key =
          phrase_key(words, span.start, span.end - span.start + 1, case_sensitive);
      if (ambiguous.count(key)) continue;
      auto [it, inserted] = lexicon.entries.emplace(key, span.type);
      if (!inserted && it->second != span.type) {
        lexicon.entries.erase(it);
        ambiguous.insert(std::move(key));
      }
    }
    ++index;
  }
  for (const auto& [key, type] : lexicon.entries) {
    lexicon.max_phrase_len = std::max(lexicon.max_phrase_len, phrase_token_count(key));
  }
  return lexicon;
}

std::vector<NeTag> tag_baseline(const BaselineLexicon& lexicon,
                                const Sentence& sentence, Scheme scheme) {
  const std::size_t n = sentence.size();
  std::vector<std::string> words = sentence_words(sentence);
  std::vector<EntitySpan> spans;
  std::size_t i = 0;
  while (i < n) {
    std::size_t matched = 0;
    EntityType type;
    for (std::size_t len = std::min(lexicon.max_phrase_len, n - i); len >= 1; --len) {
      if (std::optional<EntityType> found = lexicon.lookup(words, i, len)) {
        matched = len;
        type = *found;
        break;
      }
    }
    if (matched > 0) {
      spans.push_back({0, i, i + matched - 1, type});
      i += matched;
    } else {
      ++i;
    }
  }
  return spans_to_tags(spans, n, scheme);
}

TagMatrix tag_baseline(const BaselineLexicon& lexicon, const Corpus& corpus,
                       Scheme scheme) {
  TagMatrix result;
  result.reserve(corpus.sentence_count());
  for (const Sentence* sentence : corpus.sentences()) {
    result.push_back(tag_baseline(lexicon, *sentence, scheme));
  }
  return result;
}

void save_lexicon(const BaselineLexicon& lexicon, std::ostream& out) {
  std::vector<std::pair<std::string, EntityType>> sorted(lexicon.entries.begin(),
                                                         lexicon.entries.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [phrase, type] : sorted) {
    out << phrase << '\t' << type << '\n';
  }
}

BaselineLexicon load_lexicon(std::istream& in, bool case_sensitive,
                             const std::string& source_name) {
  BaselineLexicon lexicon;
  lexicon.case_sensitive = case_sensitive;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.rfind('\t');
    auto fail = [&](const std::string& what) {
      std::ostringstream os;
      os << source_name << ":" << line_no << ": " << what;
      throw ParseError(os.str());
    };
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      fail("expected 'phrase<TAB>TYPE'");
    }
    std::string phrase = line.substr(0, tab);
    std::string type = line.substr(tab + 1);
    if (!valid_entity_type(type)) fail("invalid entity type '" + type + "'");
    if (!case_sensitive) phrase = fold_ascii(std::move(phrase));
    lexicon.max_phrase_len = std::max(lexicon.max_phrase_len, phrase_token_count(phrase));
    lexicon.entries[std::move(phrase)] = std::move(type);
  }
  return lexicon;
}

}  // namespace nereval
