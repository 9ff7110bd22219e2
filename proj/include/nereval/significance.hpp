// Bootstrap-resampling F distributions and interval-membership significance.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nereval/corpus.hpp"
#include "nereval/types.hpp"

namespace nereval {

struct BootstrapDistribution {
  std::size_t replicates = 0;
  double level = 0.90;             // confidence fraction used for display
  std::vector<double> f_values;    // sorted ascending, each in [0, 100]
  double point_f = 0.0;            // F of the unresampled corpus
  std::uint64_t seed = 0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SignificanceVerdict {
  double a_point_f = 0.0;
  Interval b_interval;
  bool significant = false;  // a_point_f outside [lo, hi]; boundary is inside
  double margin = 0.0;       // (hi - lo)/2 rounded to 1 decimal, for "F ± m"
};

/// Seed of the random stream for one replicate. Fixed mixing function
/// (splitmix64 over seed and replicate index) so that replicate draws are
/// reproducible regardless of evaluation order; replicate r draws its
/// sentence indices as std::mt19937_64(replicate_seed(seed, r))() % n,
/// n times in sequence.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate);

/// For each replicate, draws N sentences uniformly with replacement
/// (N = number of sentences), pools their span counts and computes overall F.
/// Deterministic for a fixed seed, including under concurrent evaluation
/// (threads > 1 splits replicates across worker threads).
BootstrapDistribution bootstrap_distribution(const Corpus& gold,
                                             const TagMatrix& predicted,
                                             std::size_t replicates,
                                             std::uint64_t seed, Scheme scheme,
                                             double beta = 1.0,
                                             unsigned threads = 1);

/// Central interval by nearest-rank percentiles: lo at rank
/// ceil(((1-level)/2)*n), hi at rank ceil(((1+level)/2)*n), 1-based, clamped.
Interval interval(const BootstrapDistribution& dist, double level);

/// A's point F against the center `level` fraction of B's distribution.
SignificanceVerdict compare(double a_point_f, const BootstrapDistribution& b,
                            double level);

}  // namespace nereval
