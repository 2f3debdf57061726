#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace rankagg {

enum class Direction { HigherBetter, LowerBetter };

/// How equal scores are turned into ranks.
///   Fractional   average rank of the tied block (2.0, 2.0 -> 1.5, 1.5)
///   Competition  every tied system gets the best rank of the block
///   StableIndex  ties broken by ascending system index
enum class TiePolicy { Fractional, Competition, StableIndex };

std::string_view to_string(Direction d);
std::string_view to_string(TiePolicy p);
Direction parse_direction(std::string_view s);
TiePolicy parse_tie_policy(std::string_view s);

/// Rank vector over N systems, indexed by system. Rank 1 is the best.
/// Ranks may be fractional when the ranking carries ties.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(std::vector<double> ranks);
  Ranking(std::initializer_list<double> ranks);

  /// Builds a strict ranking; throws unless `ranks` is a permutation of 1..N.
  static Ranking from_permutation(std::span<const int> ranks);
  static Ranking identity(std::size_t n);

  std::size_t size() const noexcept { return ranks_.size(); }
  double operator[](std::size_t i) const { return ranks_[i]; }
  const std::vector<double>& ranks() const noexcept { return ranks_; }

  /// True when the ranks are exactly a permutation of 1..N.
  bool is_strict() const;

  /// System indices ordered best-first; ties keep ascending index order.
  std::vector<std::size_t> order() const;

  /// The opposite ranking (rank r becomes N + 1 - r).
  Ranking reversed() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<double> ranks_;
};

Ranking rank_from_scores(std::span<const double> scores, Direction direction,
                         TiePolicy tie_policy);

/// Rank vector of `values` in ascending order (smallest value gets rank 1),
/// ties broken by system index.
Ranking argsort_argsort(std::span<const double> values);

/// Number of unordered pairs ordered oppositely by `a` and `b`. Both rankings
/// must be strict. O(N log N).
std::uint64_t kendall_distance(const Ranking& a, const Ranking& b);

/// kendall_distance scaled into [0, 1] by N(N-1)/2.
double normalized_kendall_distance(const Ranking& a, const Ranking& b);

/// Kendall tau-b. Ties are allowed; throws when either ranking is fully tied.
double kendall_tau(const Ranking& a, const Ranking& b);

/// Number of inversions in `seq`, counted with a merge sort.
std::uint64_t count_inversions(std::span<const std::size_t> seq);

}  // namespace rankagg
