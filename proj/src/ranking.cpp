#include "rankagg/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rankagg/error.hpp"

namespace rankagg {

std::string_view to_string(Direction d) {
  return d == Direction::HigherBetter ? "higher" : "lower";
}

std::string_view to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::Fractional: return "fractional";
    case TiePolicy::Competition: return "competition";
    case TiePolicy::StableIndex: return "stable";
  }
  return "unknown";
}

Direction parse_direction(std::string_view s) {
  if (s == "higher" || s == "higher_better" || s == "max") return Direction::HigherBetter;
  if (s == "lower" || s == "lower_better" || s == "min") return Direction::LowerBetter;
  throw Error("unknown direction '" + std::string(s) + "' (expected higher|lower)");
}

TiePolicy parse_tie_policy(std::string_view s) {
  if (s == "fractional" || s == "average") return TiePolicy::Fractional;
  if (s == "competition" || s == "min") return TiePolicy::Competition;
  if (s == "stable" || s == "stable_index") return TiePolicy::StableIndex;
  throw Error("unknown tie policy '" + std::string(s) +
              "' (expected fractional|competition|stable)");
}

Ranking::Ranking(std::vector<double> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.empty()) throw Error("ranking must cover at least one system");
  const auto n = static_cast<double>(ranks_.size());
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    const double r = ranks_[i];
    if (!std::isfinite(r) || r < 1.0 || r > n) {
      throw Error("rank of system " + std::to_string(i) + " outside [1, N]");
    }
  }
}

Ranking::Ranking(std::initializer_list<double> ranks)
    : Ranking(std::vector<double>(ranks)) {}

Ranking Ranking::from_permutation(std::span<const int> ranks) {
  std::vector<bool> seen(ranks.size(), false);
  for (int r : ranks) {
    if (r < 1 || static_cast<std::size_t>(r) > ranks.size() || seen[r - 1]) {
      throw Error("rank vector is not a permutation of 1..N");
    }
    seen[r - 1] = true;
  }
  return Ranking(std::vector<double>(ranks.begin(), ranks.end()));
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<double> r(n);
  std::iota(r.begin(), r.end(), 1.0);
  return Ranking(std::move(r));
}

bool Ranking::is_strict() const {
  std::vector<bool> seen(ranks_.size(), false);
  for (double r : ranks_) {
    const auto k = static_cast<std::size_t>(r);
    if (static_cast<double>(k) != r || seen[k - 1]) return false;
    seen[k - 1] = true;
  }
  return true;
}

std::vector<std::size_t> Ranking::order() const {
  std::vector<std::size_t> idx(ranks_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return ranks_[a] < ranks_[b]; });
  return idx;
}

Ranking Ranking::reversed() const {
  std::vector<double> r(ranks_.size());
  const auto top = static_cast<double>(ranks_.size()) + 1.0;
  std::transform(ranks_.begin(), ranks_.end(), r.begin(), [&](double v) { return top - v; });
  return Ranking(std::move(r));
}

namespace {

void require_finite(std::span<const double> values) {
  if (values.empty()) throw Error("cannot rank an empty score vector");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error("non-finite score at index " + std::to_string(i));
    }
  }
}

}  // namespace

Ranking rank_from_scores(std::span<const double> scores, Direction direction,
                         TiePolicy tie_policy) {
  require_finite(scores);
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto better = [&](std::size_t a, std::size_t b) {
    return direction == Direction::HigherBetter ? scores[a] > scores[b] : scores[a] < scores[b];
  };
  std::stable_sort(idx.begin(), idx.end(), better);

  std::vector<double> ranks(n);
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && scores[idx[end]] == scores[idx[begin]]) ++end;
    for (std::size_t p = begin; p < end; ++p) {
      switch (tie_policy) {
        case TiePolicy::Fractional:
          ranks[idx[p]] = (static_cast<double>(begin + 1) + static_cast<double>(end)) / 2.0;
          break;
        case TiePolicy::Competition:
          ranks[idx[p]] = static_cast<double>(begin + 1);
          break;
        case TiePolicy::StableIndex:
          ranks[idx[p]] = static_cast<double>(p + 1);
          break;
      }
    }
    begin = end;
  }
  return Ranking(std::move(ranks));
}

Ranking argsort_argsort(std::span<const double> values) {
  return rank_from_scores(values, Direction::LowerBetter, TiePolicy::StableIndex);
}

namespace {

std::uint64_t merge_count(std::span<std::size_t> seq, std::span<std::size_t> buf) {
  const std::size_t n = seq.size();
  if (n < 2) return 0;
  const std::size_t mid = n / 2;
  std::uint64_t inv = merge_count(seq.first(mid), buf.first(mid)) +
                      merge_count(seq.subspan(mid), buf.subspan(mid));
  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    if (seq[j] < seq[i]) {
      inv += mid - i;
      buf[out++] = seq[j++];
    } else {
      buf[out++] = seq[i++];
    }
  }
  while (i < mid) buf[out++] = seq[i++];
  while (j < n) buf[out++] = seq[j++];
  std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n), seq.begin());
  return inv;
}

void require_same_size(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw Error("rankings cover different numbers of systems (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

std::uint64_t count_inversions(std::span<const std::size_t> seq) {
  std::vector<std::size_t> work(seq.begin(), seq.end());
  std::vector<std::size_t> buf(seq.size());
  return merge_count(work, buf);
}

std::uint64_t kendall_distance(const Ranking& a, const Ranking& b) {
  require_same_size(a, b);
  if (!a.is_strict() || !b.is_strict()) {
    throw Error("kendall_distance requires strict rankings; resolve ties first");
  }
  // Walk systems in a's order and count inversions of their ranks under b.
  std::vector<std::size_t> seq(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    seq[static_cast<std::size_t>(a[i]) - 1] = static_cast<std::size_t>(b[i]);
  }
  std::vector<std::size_t> buf(seq.size());
  return merge_count(seq, buf);
}

double normalized_kendall_distance(const Ranking& a, const Ranking& b) {
  require_same_size(a, b);
  if (a.size() < 2) throw Error("normalized Kendall distance needs at least two systems");
  const auto n = static_cast<double>(a.size());
  return static_cast<double>(kendall_distance(a, b)) / (n * (n - 1.0) / 2.0);
}

double kendall_tau(const Ranking& a, const Ranking& b) {
  require_same_size(a, b);
  std::uint64_t concordant = 0, discordant = 0, tied_a = 0, tied_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0 && db == 0.0) continue;
      if (da == 0.0) {
        ++tied_a;
      } else if (db == 0.0) {
        ++tied_b;
      } else if ((da > 0.0) == (db > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const auto cd = static_cast<double>(concordant + discordant);
  const double denom = std::sqrt((cd + static_cast<double>(tied_a)) *
                                 (cd + static_cast<double>(tied_b)));
  if (denom == 0.0) throw Error("degenerate ranking: Kendall tau undefined when all ranks tie");
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / denom;
}

}  // namespace rankagg
