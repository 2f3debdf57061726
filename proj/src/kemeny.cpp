#include "rankagg/kemeny.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "rankagg/aggregators.hpp"
#include "rankagg/error.hpp"
#include "rankagg/parallel.hpp"

namespace rankagg {

namespace {

std::size_t common_size(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw Error("Kemeny consensus needs at least one input ranking");
  const std::size_t n = rankings.front().size();
  for (const auto& r : rankings) {
    if (r.size() != n) {
      throw Error("input rankings cover different numbers of systems (" + std::to_string(n) +
                  " vs " + std::to_string(r.size()) + ")");
    }
  }
  return n;
}

void require_strict(std::span<const Ranking> rankings) {
  for (const auto& r : rankings) {
    if (!r.is_strict()) throw Error("exhaustive Kemeny search requires strict input rankings");
  }
}

// Cost in half-units of the rank vector `ranks` against the preference matrix.
std::uint64_t permutation_cost(const PreferenceMatrix& pref, std::span<const int> ranks) {
  const std::size_t n = ranks.size();
  std::uint64_t cost = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cost += ranks[i] < ranks[j] ? pref.half_units(j, i) : pref.half_units(i, j);
    }
  }
  return cost;
}

Ranking ranking_from_order(std::span<const std::size_t> order) {
  std::vector<int> ranks(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) ranks[order[p]] = static_cast<int>(p + 1);
  return Ranking::from_permutation(ranks);
}

struct BranchBound {
  const PreferenceMatrix& pref;
  std::size_t n;
  std::uint64_t best_cost;
  std::vector<std::size_t> best_order;
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> candidate_order;  // child expansion order
  std::vector<std::uint64_t> seen_cost;      // best cost reaching each placed-set

  std::uint64_t pair_min(std::size_t i, std::size_t j) const {
    return std::min(pref.half_units(i, j), pref.half_units(j, i));
  }

  void search(std::uint64_t remaining_mask, std::uint64_t cost, std::uint64_t bound) {
    if (remaining_mask == 0) {
      if (cost < best_cost) {
        best_cost = cost;
        best_order = prefix;
      }
      return;
    }
    const std::uint64_t full = ((1ULL << n) - 1);
    const std::uint64_t placed = full & ~remaining_mask;
    auto& seen = seen_cost[placed];
    if (cost >= seen) return;
    seen = cost;

    for (std::size_t x : candidate_order) {
      if (!(remaining_mask & (1ULL << x))) continue;
      std::uint64_t add = 0;
      std::uint64_t bound_drop = 0;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || !(remaining_mask & (1ULL << y))) continue;
        add += pref.half_units(y, x);
        bound_drop += pair_min(x, y);
      }
      const std::uint64_t next_bound = bound - bound_drop;
      if (cost + add + next_bound >= best_cost) continue;
      prefix.push_back(x);
      search(remaining_mask & ~(1ULL << x), cost + add, next_bound);
      prefix.pop_back();
    }
  }
};

}  // namespace

PreferenceMatrix::PreferenceMatrix(std::span<const Ranking> rankings)
    : n_(common_size(rankings)), counts_(n_ * n_, 0) {
  for (const auto& r : rankings) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (r[i] < r[j]) {
          counts_[i * n_ + j] += 2;
        } else if (r[j] < r[i]) {
          counts_[j * n_ + i] += 2;
        } else {
          counts_[i * n_ + j] += 1;
          counts_[j * n_ + i] += 1;
        }
      }
    }
  }
}

double kemeny_objective(const Ranking& candidate, std::span<const Ranking> rankings) {
  const std::size_t n = common_size(rankings);
  if (candidate.size() != n) {
    throw Error("candidate covers " + std::to_string(candidate.size()) +
                " systems but inputs cover " + std::to_string(n));
  }
  if (!candidate.is_strict()) throw Error("Kemeny candidate must be a strict ranking");
  double total = 0.0;
  for (const auto& r : rankings) {
    if (r.is_strict()) {
      total += static_cast<double>(kendall_distance(candidate, r));
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dr = r[i] - r[j];
        if (dr == 0.0) {
          total += 0.5;
        } else if ((dr < 0.0) != (candidate[i] < candidate[j])) {
          total += 1.0;
        }
      }
    }
  }
  return total;
}

KemenySolution kemeny_brute_force(std::span<const Ranking> rankings, std::size_t n_max,
                                  unsigned threads) {
  const std::size_t n = common_size(rankings);
  if (n > n_max) {
    throw Error("N = " + std::to_string(n) + " exceeds brute-force limit " +
                std::to_string(n_max) + "; use branch-and-bound or Borda");
  }
  require_strict(rankings);
  const PreferenceMatrix pref(rankings);

  // Chunk c enumerates, in lexicographic order, every rank vector giving
  // system 0 rank c + 1. Chunks are themselves lexicographically ordered.
  struct Chunk {
    std::uint64_t cost = std::numeric_limits<std::uint64_t>::max();
    std::vector<int> ranks;
    std::uint64_t count = 0;
  };
  std::vector<Chunk> chunks(n);
  parallel_for(n, threads, [&](std::size_t c) {
    std::vector<int> ranks(n);
    ranks[0] = static_cast<int>(c + 1);
    int next = 1;
    for (std::size_t i = 1; i < n; ++i) {
      if (next == ranks[0]) ++next;
      ranks[i] = next++;
    }
    auto& out = chunks[c];
    do {
      const auto cost = permutation_cost(pref, ranks);
      if (cost < out.cost) {
        out.cost = cost;
        out.ranks = ranks;
        out.count = 1;
      } else if (cost == out.cost) {
        ++out.count;
      }
    } while (std::next_permutation(ranks.begin() + 1, ranks.end()));
  });

  const Chunk* best = &chunks.front();
  std::uint64_t count = 0;
  for (const auto& c : chunks) {
    if (c.cost < best->cost) best = &c;
  }
  for (const auto& c : chunks) {
    if (c.cost == best->cost) count += c.count;
  }
  KemenySolution sol;
  sol.consensus = Ranking::from_permutation(best->ranks);
  sol.objective = static_cast<double>(best->cost) / 2.0;
  sol.optimal = true;
  sol.co_optima_count = count;
  return sol;
}

KemenySolution kemeny_branch_bound(std::span<const Ranking> rankings, std::size_t n_max) {
  const std::size_t n = common_size(rankings);
  if (n > n_max || n > 20) {
    throw Error("N = " + std::to_string(n) + " exceeds branch-and-bound limit " +
                std::to_string(std::min<std::size_t>(n_max, 20)));
  }
  const PreferenceMatrix pref(rankings);

  // Borda gives the incumbent and the child expansion order.
  const auto start = borda(rankings);
  const auto start_order = start.ranking.order();
  std::vector<int> start_ranks(n);
  for (std::size_t i = 0; i < n; ++i) start_ranks[i] = static_cast<int>(start.ranking[i]);

  BranchBound bb{pref,
                 n,
                 permutation_cost(pref, start_ranks),
                 start_order,
                 {},
                 start_order,
                 std::vector<std::uint64_t>(std::size_t{1} << n,
                                            std::numeric_limits<std::uint64_t>::max())};
  std::uint64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) bound += bb.pair_min(i, j);
  }
  bb.prefix.reserve(n);
  if (bb.best_cost > bound) bb.search(((1ULL << n) - 1), 0, bound);

  KemenySolution sol;
  sol.consensus = ranking_from_order(bb.best_order);
  sol.objective = static_cast<double>(bb.best_cost) / 2.0;
  sol.optimal = true;
  return sol;
}

double borda_approx_ratio(std::span<const Ranking> rankings) {
  const auto exact = kemeny_branch_bound(rankings);
  const double borda_obj = kemeny_objective(borda(rankings).ranking, rankings);
  if (exact.objective == 0.0) {
    if (borda_obj == 0.0) return 1.0;
    throw Error("unanimity violated: Borda missed a zero-cost consensus");
  }
  return borda_obj / exact.objective;
}

}  // namespace rankagg
