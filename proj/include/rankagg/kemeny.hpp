#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankagg/ranking.hpp"

namespace rankagg {

struct KemenySolution {
  Ranking consensus;
  double objective = 0.0;  // sum of Kendall distances to the inputs
  bool optimal = false;
  /// Number of permutations attaining the optimum; only exhaustive search knows it.
  std::optional<std::uint64_t> co_optima_count;
};

/// Pairwise preference counts: entry (i, j) is the number of input rankings
/// that place i strictly above j. Pairs tied in an input add 0.5 both ways.
class PreferenceMatrix {
 public:
  explicit PreferenceMatrix(std::span<const Ranking> rankings);

  std::size_t size() const noexcept { return n_; }
  /// Inputs preferring i over j, in half-units (2 per strict preference).
  std::uint64_t half_units(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
  double prefer(std::size_t i, std::size_t j) const {
    return static_cast<double>(half_units(i, j)) / 2.0;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> counts_;
};

/// Sum over inputs of the Kendall distance to a strict candidate. A pair tied
/// in an input and ordered in the candidate costs 0.5.
double kemeny_objective(const Ranking& candidate, std::span<const Ranking> rankings);

/// Exhaustive search over all N! permutations; ties go to the
/// lexicographically smallest rank vector.
KemenySolution kemeny_brute_force(std::span<const Ranking> rankings, std::size_t n_max = 10,
                                  unsigned threads = 1);

/// Exact depth-first branch-and-bound over prefix orderings.
KemenySolution kemeny_branch_bound(std::span<const Ranking> rankings, std::size_t n_max = 15);

/// Kemeny objective of the Borda ranking divided by the exact optimum.
double borda_approx_ratio(std::span<const Ranking> rankings);

}  // namespace rankagg
