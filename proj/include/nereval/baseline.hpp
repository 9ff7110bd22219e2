// Unique-class baseline tagger: memorize training entity phrases that always
// carry one type, tag test text by leftmost-longest lookup.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nereval/corpus.hpp"
#include "nereval/types.hpp"

namespace nereval {

struct BaselineLexicon {
  // Keyed by the phrase's words joined with a single space (words never
  // contain whitespace, so the join is unambiguous). Phrases seen in
  // training with more than one type are absent.
  std::unordered_map<std::string, EntityType> entries;
  std::size_t max_phrase_len = 0;  // in tokens, over kept entries
  bool case_sensitive = true;

  std::size_t size() const { return entries.size(); }
  std::optional<EntityType> lookup(const std::vector<std::string>& words,
                                   std::size_t start, std::size_t len) const;
};

/// Collects every entity phrase of the training corpus and keeps those whose
/// training occurrences all share one type.
BaselineLexicon build_lexicon(const Corpus& training, Scheme scheme,
                              bool case_sensitive = true,
                              Strictness strictness = Strictness::Lenient);

/// Left-to-right scan; at each position the longest lexicon phrase starting
/// there wins and the scan resumes after it. Unmatched tokens are O.
std::vector<NeTag> tag_baseline(const BaselineLexicon& lexicon,
                                const Sentence& sentence, Scheme scheme);

TagMatrix tag_baseline(const BaselineLexicon& lexicon, const Corpus& corpus,
                       Scheme scheme);

/// Text persistence, one sorted "phrase<TAB>TYPE" entry per line.
void save_lexicon(const BaselineLexicon& lexicon, std::ostream& out);
BaselineLexicon load_lexicon(std::istream& in, bool case_sensitive = true,
                             const std::string& source_name = "<input>");

}  // namespace nereval
