#include "nereval/ensemble.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "nereval/scoring.hpp"

namespace nereval {

namespace {

void check_output_shapes(const std::vector<const SystemOutput*>& outputs) {
  const TagMatrix& reference = outputs.front()->tags;
  for (const SystemOutput* output : outputs) {
    if (output->tags.size() != reference.size()) {
      std::ostringstream os;
      os << "system '" << output->system_id << "' covers " << output->tags.size()
         << " sentences, expected " << reference.size();
      throw AlignmentError(os.str());
    }
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (output->tags[i].size() != reference[i].size()) {
        std::ostringstream os;
        os << "system '" << output->system_id << "': sentence " << i << " has "
           << output->tags[i].size() << " tokens, expected " << reference[i].size();
        throw AlignmentError(os.str());
      }
    }
  }
}

// Ranks F descending, then smaller subsets, then lexicographic ids.
bool better_state(const SearchState& a, const SearchState& b) {
  if (a.dev_f != b.dev_f) return a.dev_f > b.dev_f;
  if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
  return a.subset < b.subset;
}

TagMatrix vote_impl(const std::vector<const SystemOutput*>& outputs,
                    const std::vector<std::string>& tie_order, Scheme scheme,
                    bool repair) {
  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < tie_order.size(); ++i) rank.emplace(tie_order[i], i);
  for (const SystemOutput* output : outputs) {
    if (!rank.count(output->system_id)) {
      throw std::invalid_argument("tie_order does not rank system '" +
                                  output->system_id + "'");
    }
  }
  check_output_shapes(outputs);

  std::vector<const SystemOutput*> by_rank = outputs;
  std::stable_sort(by_rank.begin(), by_rank.end(),
                   [&rank](const SystemOutput* a, const SystemOutput* b) {
                     return rank.at(a->system_id) < rank.at(b->system_id);
                   });

  const TagMatrix& shape = outputs.front()->tags;
  TagMatrix voted(shape.size());
  std::map<std::string, std::size_t> votes;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    voted[i].reserve(shape[i].size());
    for (std::size_t t = 0; t < shape[i].size(); ++t) {
      votes.clear();
      for (const SystemOutput* output : by_rank) ++votes[output->tags[i][t].str()];
      std::size_t max_count = 0;
      for (const auto& [tag, count] : votes) max_count = std::max(max_count, count);
      // Highest-ranked system whose vote is among the tied leaders.
      const NeTag* winner = nullptr;
      for (const SystemOutput* output : by_rank) {
        const NeTag& candidate = output->tags[i][t];
        if (votes.at(candidate.str()) == max_count) {
          winner = &candidate;
          break;
        }
      }
      voted[i].push_back(*winner);
    }
  }
  return repair ? repair_tags(voted, scheme) : voted;
}

}  // namespace

TagMatrix majority_vote(const std::vector<SystemOutput>& outputs,
                        const std::vector<std::string>& tie_order, Scheme scheme,
                        bool repair) {
  if (outputs.empty()) throw std::invalid_argument("majority_vote needs at least one system");
  std::vector<const SystemOutput*> pointers;
  pointers.reserve(outputs.size());
  for (const SystemOutput& output : outputs) pointers.push_back(&output);
  return vote_impl(pointers, tie_order, scheme, repair);
}

double evaluate_subset(const std::vector<std::string>& subset,
                       const std::vector<SystemOutput>& outputs, const Corpus& gold,
                       const std::vector<std::string>& tie_order, Scheme scheme) {
  if (subset.empty()) throw std::invalid_argument("cannot evaluate an empty system subset");
  std::vector<const SystemOutput*> members;
  members.reserve(subset.size());
  for (const std::string& id : subset) {
    auto it = std::find_if(outputs.begin(), outputs.end(),
                           [&id](const SystemOutput& o) { return o.system_id == id; });
    if (it == outputs.end()) throw std::invalid_argument("unknown system '" + id + "'");
    members.push_back(&*it);
  }
  TagMatrix combined = vote_impl(members, tie_order, scheme, true);
  return score(gold, combined, scheme, 1.0).overall.fbeta;
}

std::vector<std::string> rank_by_individual_f(const std::vector<SystemOutput>& outputs,
                                              const Corpus& gold, Scheme scheme) {
  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(outputs.size());
  for (const SystemOutput& output : outputs) {
    ranked.emplace_back(score(gold, output.tags, scheme, 1.0).overall.fbeta,
                        output.system_id);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> order;
  order.reserve(ranked.size());
  for (auto& [f, id] : ranked) order.push_back(std::move(id));
  return order;
}

SelectionResult hill_climb_select(const std::vector<SystemOutput>& outputs,
                                  const Corpus& gold_dev, std::size_t beam,
                                  std::vector<std::string> tie_order, Scheme scheme) {
  if (outputs.empty()) throw std::invalid_argument("hill_climb_select needs at least one system");
  if (beam < 1) throw std::invalid_argument("beam must be at least 1");
  std::vector<std::string> ids;
  ids.reserve(outputs.size());
  for (const SystemOutput& output : outputs) ids.push_back(output.system_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("duplicate system ids");
  }
  if (tie_order.empty()) tie_order = rank_by_individual_f(outputs, gold_dev, scheme);

  std::map<std::vector<std::string>, double> evaluated;
  auto dev_f = [&](const std::vector<std::string>& subset) {
    auto it = evaluated.find(subset);
    if (it == evaluated.end()) {
      it = evaluated.emplace(subset, evaluate_subset(subset, outputs, gold_dev,
                                                     tie_order, scheme)).first;
    }
    return it->second;
  };

  SearchTrace trace;
  SearchState best_ever;
  bool have_best = false;
  std::vector<SearchState> frontier;

  const std::size_t cap =
      outputs.size() >= 20 ? (std::size_t{1} << 20) : (std::size_t{1} << outputs.size());
  for (std::size_t iteration = 0; iteration < cap; ++iteration) {
    // Candidates: the current frontier plus every single-system addition and
    // removal of each frontier state. The first iteration expands the empty
    // set, whose only neighbors are the singletons.
    std::set<std::vector<std::string>> candidates;
    if (iteration == 0) {
      for (const std::string& id : ids) candidates.insert({id});
    } else {
      for (const SearchState& state : frontier) {
        candidates.insert(state.subset);
        for (const std::string& id : ids) {
          std::vector<std::string> next = state.subset;
          auto pos = std::lower_bound(next.begin(), next.end(), id);
          if (pos != next.end() && *pos == id) {
            if (next.size() > 1) {
              next.erase(pos);
              candidates.insert(std::move(next));
            }
          } else {
            next.insert(pos, id);
            candidates.insert(std::move(next));
          }
        }
      }
    }

    std::vector<SearchState> scored;
    scored.reserve(candidates.size());
    for (const std::vector<std::string>& subset : candidates) {
      scored.push_back({subset, dev_f(subset)});
    }
    std::sort(scored.begin(), scored.end(), better_state);
    if (scored.size() > beam) scored.resize(beam);

    if (!have_best || better_state(scored.front(), best_ever)) {
      best_ever = scored.front();
      have_best = true;
    }
    trace.iterations.push_back({scored, best_ever});
    if (scored == frontier) break;
    frontier = std::move(scored);
  }
  return {best_ever, trace};
}

}  // namespace nereval
