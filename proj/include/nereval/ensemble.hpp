// System combination: per-token majority voting and beam-search selection of
// the best system subset on development data.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nereval/corpus.hpp"
#include "nereval/types.hpp"

namespace nereval {

struct SystemOutput {
  std::string system_id;
  TagMatrix tags;  // aligned to the reference corpus, repaired at load
};

struct SearchState {
  std::vector<std::string> subset;  // sorted system ids
  double dev_f = 0.0;

  friend bool operator==(const SearchState&, const SearchState&) = default;
};

struct SearchTrace {
  struct Iteration {
    std::vector<SearchState> beam;  // frontier after the iteration, best first
    SearchState best;               // best-ever state after the iteration
  };
  std::vector<Iteration> iterations;
};

struct SelectionResult {
  SearchState best;
  SearchTrace trace;
};

/// Per token, the tag string with the most votes wins; ties go to the vote of
/// the highest-ranked system in tie_order among the tied tags. The voted
/// sequence is then repaired to a valid tag sequence in `scheme` unless
/// repair is disabled.
TagMatrix majority_vote(const std::vector<SystemOutput>& outputs,
                        const std::vector<std::string>& tie_order,
                        Scheme scheme, bool repair = true);

/// Overall F1 of majority_vote over the named subset against gold.
double evaluate_subset(const std::vector<std::string>& subset,
                       const std::vector<SystemOutput>& outputs,
                       const Corpus& gold,
                       const std::vector<std::string>& tie_order, Scheme scheme);

/// Default tie order: systems ranked by individual dev F, best first,
/// ties by id.
std::vector<std::string> rank_by_individual_f(
    const std::vector<SystemOutput>& outputs, const Corpus& gold, Scheme scheme);

/// Bidirectional hill-climbing beam search over system subsets, starting from
/// the empty set. Each iteration expands every frontier state by all single
/// additions and removals; the frontier keeps the `beam` best states seen so
/// far (F descending, then smaller subset, then lexicographic ids) and the
/// search stops once an iteration leaves the frontier unchanged. An empty
/// tie_order means rank_by_individual_f.
SelectionResult hill_climb_select(const std::vector<SystemOutput>& outputs,
                                  const Corpus& gold_dev, std::size_t beam = 9,
                                  std::vector<std::string> tie_order = {},
                                  Scheme scheme = Scheme::IOB1);

}  // namespace nereval
