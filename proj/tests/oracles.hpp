// Slow reference implementations used to check the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "rankagg/ranking.hpp"

namespace oracle {

/// Discordant pairs by direct enumeration.
inline std::uint64_t kendall_distance(const std::vector<double>& a, const std::vector<double>& b) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] - a[j]) * (b[i] - b[j]) < 0) ++d;
    }
  }
  return d;
}

/// Kemeny cost where a pair tied in the input and ordered in the candidate costs 1/2.
inline double kemeny_cost(const std::vector<double>& candidate,
                          const std::vector<std::vector<double>>& inputs) {
  double cost = 0;
  for (const auto& r : inputs) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        const double c = candidate[i] - candidate[j];
        const double s = r[i] - r[j];
        if (s == 0) {
          cost += 0.5;
        } else if (c * s < 0) {
          cost += 1.0;
        }
      }
    }
  }
  return cost;
}

struct Optimum {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<double> first;  // lexicographically smallest optimal rank vector
  std::uint64_t count = 0;
};

/// Every permutation of 1..N as a rank vector.
inline Optimum kemeny_enumerate(const std::vector<std::vector<double>>& inputs) {
  const std::size_t n = inputs.front().size();
  std::vector<double> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  Optimum best;
  do {
    const double c = kemeny_cost(ranks, inputs);
    if (c < best.cost) {
      best = {c, ranks, 1};
    } else if (c == best.cost) {
      ++best.count;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

inline rankagg::Ranking random_permutation(std::size_t n, std::mt19937_64& gen) {
  std::vector<double> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  std::shuffle(ranks.begin(), ranks.end(), gen);
  return rankagg::Ranking(ranks);
}

inline std::vector<std::vector<double>> raw(const std::vector<rankagg::Ranking>& rs) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rs) out.push_back(r.ranks());
  return out;
}

}  // namespace oracle
