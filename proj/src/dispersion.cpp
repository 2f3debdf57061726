#include "rankagg/dispersion.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "rankagg/error.hpp"
#include "rankagg/kemeny.hpp"

namespace rankagg {

namespace {

void require_pairs(std::span<const Ranking> rankings) {
  if (rankings.size() < 2) throw Error("pairwise dispersion needs at least two rankings");
}

}  // namespace

double performance_dispersion(const Ranking& candidate, std::span<const Ranking> rankings) {
  return kemeny_objective(candidate, rankings);
}

double pairwise_dispersion(std::span<const Ranking> rankings) {
  require_pairs(rankings);
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < rankings.size(); ++a) {
    for (std::size_t b = a + 1; b < rankings.size(); ++b) {
      total += kendall_distance(rankings[a], rankings[b]);
    }
  }
  const auto t = static_cast<double>(rankings.size());
  // Each unordered pair stands for both ordered pairs, so the two means agree.
  return 2.0 * static_cast<double>(total) / (t * (t - 1.0));
}

Estimate pairwise_dispersion_subsampled(std::span<const Ranking> rankings, std::size_t n_pairs,
                                        Rng& rng, bool exhaustive) {
  require_pairs(rankings);
  if (exhaustive) return {pairwise_dispersion(rankings), 0.0};
  if (n_pairs < 1) throw Error("subsampled dispersion needs n_pairs >= 1");
  const std::size_t t = rankings.size();
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto a = static_cast<std::size_t>(rng.below(t));
    auto b = static_cast<std::size_t>(rng.below(t - 1));
    if (b >= a) ++b;
    const auto d = static_cast<double>(kendall_distance(rankings[a], rankings[b]));
    sum += d;
    sum_sq += d * d;
  }
  const auto m = static_cast<double>(n_pairs);
  const double mean = sum / m;
  if (n_pairs < 2) return {mean, 0.0};
  const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0));
  return {mean, std::sqrt(var / m)};
}

MeanStd random_baseline(std::span<const Ranking> rankings, std::size_t n_random, Rng& rng) {
  if (rankings.empty()) throw Error("random baseline needs at least one ranking");
  if (n_random < 1) throw Error("random baseline needs n_random >= 1");
  const std::size_t n = rankings.front().size();
  std::vector<double> values;
  values.reserve(n_random);
  std::vector<int> perm(n);
  for (std::size_t r = 0; r < n_random; ++r) {
    std::iota(perm.begin(), perm.end(), 1);
    rng.shuffle(std::span<int>(perm));
    values.push_back(performance_dispersion(Ranking::from_permutation(perm), rankings));
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

SandwichResult sandwich_check(std::span<const Ranking> rankings) {
  require_pairs(rankings);
  const auto exact = kemeny_branch_bound(rankings);
  SandwichResult out;
  out.upper = pairwise_dispersion(rankings);
  out.lower = 0.5 * out.upper;
  out.value = exact.objective / static_cast<double>(rankings.size());
  // Small slack absorbs rounding in the divisions above.
  constexpr double eps = 1e-12;
  out.ok = out.lower <= out.value + eps && out.value <= out.upper + eps;
  return out;
}

}  // namespace rankagg
