#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "rankagg/ranking.hpp"
#include "rankagg/rng.hpp"

namespace rankagg {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct SandwichResult {
  double lower = 0.0;  // half the pairwise dispersion
  double value = 0.0;  // exact Kemeny objective divided by T
  double upper = 0.0;  // pairwise dispersion
  bool ok = false;
};

struct DispersionReport {
  std::map<std::string, double> performance;  // method label -> sum of distances
  double pairwise_mean = 0.0;
  double random_baseline_mean = 0.0;
  double random_baseline_std = 0.0;
  std::size_t n_random = 100;
  std::optional<SandwichResult> sandwich;  // only when exact Kemeny is feasible
  std::uint64_t seed = 0;
};

/// Total Kendall distance from a candidate to the inputs (the Kemeny objective).
double performance_dispersion(const Ranking& candidate, std::span<const Ranking> rankings);

/// Mean Kendall distance over distinct pairs of inputs. Needs T >= 2.
double pairwise_dispersion(std::span<const Ranking> rankings);

/// Monte-Carlo estimate of pairwise_dispersion from n_pairs uniformly drawn
/// distinct pairs (with replacement). When `exhaustive` is set every distinct
/// pair is visited once and the result is exact.
Estimate pairwise_dispersion_subsampled(std::span<const Ranking> rankings, std::size_t n_pairs,
                                        Rng& rng, bool exhaustive = false);

/// Mean and sample standard deviation of performance_dispersion over
/// n_random uniformly random permutations.
MeanStd random_baseline(std::span<const Ranking> rankings, std::size_t n_random, Rng& rng);

SandwichResult sandwich_check(std::span<const Ranking> rankings);

}  // namespace rankagg
