#include "nereval/significance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "nereval/scoring.hpp"

namespace nereval {

namespace {

struct SentenceCounts {
  std::size_t gold = 0;
  std::size_t pred = 0;
  std::size_t correct = 0;
};

std::size_t exact_matches(const std::vector<EntitySpan>& gold,
                          const std::vector<EntitySpan>& pred) {
  std::size_t matched = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < gold.size() && b < pred.size()) {
    if (gold[a].start == pred[b].start) {
      if (gold[a].end == pred[b].end && gold[a].type == pred[b].type) ++matched;
      ++a;
      ++b;
    } else if (gold[a].start < pred[b].start) {
      ++a;
    } else {
      ++b;
    }
  }
  return matched;
}

std::vector<SentenceCounts> per_sentence_counts(const Corpus& gold,
                                                const TagMatrix& predicted,
                                                Scheme scheme) {
  check_shape(gold, predicted);
  std::vector<const Sentence*> sentences = gold.sentences();
  std::vector<SentenceCounts> counts(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::vector<EntitySpan> gold_spans = tags_to_spans(sentences[i]->tags(), scheme);
    std::vector<EntitySpan> pred_spans = tags_to_spans(predicted[i], scheme);
    counts[i].gold = gold_spans.size();
    counts[i].pred = pred_spans.size();
    counts[i].correct = exact_matches(gold_spans, pred_spans);
  }
  return counts;
}

double pooled_f(const SentenceCounts& total, double beta) {
  const double precision = total.pred == 0 ? 0.0 : 100.0 * total.correct / total.pred;
  const double recall = total.gold == 0 ? 0.0 : 100.0 * total.correct / total.gold;
  return fbeta(precision, recall, beta);
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (replicate + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BootstrapDistribution bootstrap_distribution(const Corpus& gold,
                                             const TagMatrix& predicted,
                                             std::size_t replicates,
                                             std::uint64_t seed, Scheme scheme,
                                             double beta, unsigned threads) {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  std::vector<SentenceCounts> counts = per_sentence_counts(gold, predicted, scheme);
  const std::size_t n = counts.size();
  if (n == 0) throw std::invalid_argument("cannot resample an empty corpus");

  BootstrapDistribution dist;
  dist.replicates = replicates;
  dist.seed = seed;
  SentenceCounts total;
  for (const SentenceCounts& c : counts) {
    total.gold += c.gold;
    total.pred += c.pred;
    total.correct += c.correct;
  }
  dist.point_f = pooled_f(total, beta);

  dist.f_values.resize(replicates);
  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 rng(replicate_seed(seed, r));
      SentenceCounts sum;
      for (std::size_t k = 0; k < n; ++k) {
        const SentenceCounts& c = counts[rng() % n];
        sum.gold += c.gold;
        sum.pred += c.pred;
        sum.correct += c.correct;
      }
      dist.f_values[r] = pooled_f(sum, beta);
    }
  };

  if (threads <= 1 || replicates < 2) {
    evaluate_range(0, replicates);
  } else {
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(replicates));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (replicates + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(replicates, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(evaluate_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  std::sort(dist.f_values.begin(), dist.f_values.end());
  return dist;
}

Interval interval(const BootstrapDistribution& dist, double level) {
  if (level <= 0.0 || level >= 1.0) {
    throw std::invalid_argument("level must be strictly between 0 and 1");
  }
  const std::size_t n = dist.f_values.size();
  if (n == 0) throw std::invalid_argument("empty bootstrap distribution");
  auto nearest_rank = [n](double q) {
    double rank = std::ceil(q * static_cast<double>(n) - 1e-9);
    if (rank < 1.0) rank = 1.0;
    if (rank > static_cast<double>(n)) rank = static_cast<double>(n);
    return static_cast<std::size_t>(rank);
  };
  const std::size_t lo_rank = nearest_rank((1.0 - level) / 2.0);
  const std::size_t hi_rank = nearest_rank((1.0 + level) / 2.0);
  return {dist.f_values[lo_rank - 1], dist.f_values[hi_rank - 1]};
}

SignificanceVerdict compare(double a_point_f, const BootstrapDistribution& b,
                            double level) {
  SignificanceVerdict verdict;
  verdict.a_point_f = a_point_f;
  verdict.b_interval = interval(b, level);
  verdict.significant =
      a_point_f < verdict.b_interval.lo || a_point_f > verdict.b_interval.hi;
  verdict.margin =
      std::round((verdict.b_interval.hi - verdict.b_interval.lo) / 2.0 * 10.0) / 10.0;
  return verdict;
}

}  // namespace nereval
