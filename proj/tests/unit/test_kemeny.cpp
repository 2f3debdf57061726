#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "rankagg/error.hpp"
#include "rankagg/kemeny.hpp"

using namespace rankagg;

TEST(KemenyObjective, Examples) {
  const std::vector<Ranking> same{Ranking({2, 1, 3}), Ranking({2, 1, 3})};
  EXPECT_EQ(kemeny_objective(Ranking({2, 1, 3}), same), 0.0);
  const std::vector<Ranking> rev{Ranking({1, 2, 3}), Ranking({3, 2, 1})};
  EXPECT_EQ(kemeny_objective(Ranking({1, 2, 3}), rev), 3.0);
  const std::vector<Ranking> two{Ranking({1, 2, 3}), Ranking({1, 3, 2})};
  EXPECT_EQ(kemeny_objective(Ranking({2, 1, 3}), two), 3.0);
}

TEST(KemenyObjective, TiedInputsCostHalf) {
  const std::vector<Ranking> tied{Ranking({1.5, 1.5, 3})};
  EXPECT_EQ(kemeny_objective(Ranking({1, 2, 3}), tied), 0.5);
  EXPECT_THROW(kemeny_objective(Ranking({1.5, 1.5}), tied), Error);
}

TEST(PreferenceMatrix, CountsHalfUnits) {
  const std::vector<Ranking> rs{Ranking({1, 2}), Ranking({1.5, 1.5}), Ranking({1, 2})};
  const PreferenceMatrix p(rs);
  EXPECT_EQ(p.prefer(0, 1), 2.5);
  EXPECT_EQ(p.prefer(1, 0), 0.5);
}

TEST(KemenyBruteForce, Examples) {
  const std::vector<Ranking> a{Ranking({1, 2, 3}), Ranking({1, 2, 3}), Ranking({3, 2, 1})};
  const auto s = kemeny_brute_force(a);
  EXPECT_EQ(s.consensus, Ranking({1, 2, 3}));
  EXPECT_EQ(s.objective, 3.0);
  EXPECT_TRUE(s.optimal);

  const std::vector<Ranking> single{Ranking({3, 1, 2})};
  EXPECT_EQ(kemeny_brute_force(single).consensus, single[0]);
  EXPECT_EQ(kemeny_brute_force(single).objective, 0.0);

  const std::vector<Ranking> cyc{Ranking({1, 2}), Ranking({2, 1})};
  const auto c = kemeny_brute_force(cyc);
  EXPECT_EQ(c.objective, 1.0);
  EXPECT_EQ(c.co_optima_count, 2u);
  EXPECT_EQ(c.consensus, Ranking({1, 2}));
}

TEST(KemenyBruteForce, Limits) {
  std::vector<Ranking> big{Ranking::identity(11)};
  EXPECT_THROW(kemeny_brute_force(big), Error);
  const std::vector<Ranking> tied{Ranking({1.5, 1.5})};
  EXPECT_THROW(kemeny_brute_force(tied), Error);
  const std::vector<Ranking> ragged{Ranking({1, 2}), Ranking({1, 2, 3})};
  EXPECT_THROW(kemeny_brute_force(ragged), Error);
}

TEST(KemenyBruteForce, MatchesEnumerationOracle) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    const std::size_t t = 1 + gen() % 6;
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < t; ++i) rs.push_back(oracle::random_permutation(n, gen));
    const auto want = oracle::kemeny_enumerate(oracle::raw(rs));
    const auto got = kemeny_brute_force(rs, 10, 1 + trial % 3);
    ASSERT_EQ(got.objective, want.cost);
    ASSERT_EQ(got.consensus.ranks(), want.first);
    ASSERT_EQ(got.co_optima_count, want.count);
  }
}

TEST(KemenyBranchBound, MatchesBruteForce) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Ranking> rs;
    for (int i = 0; i < 5; ++i) rs.push_back(oracle::random_permutation(7, gen));
    const auto bb = kemeny_branch_bound(rs);
    ASSERT_EQ(bb.objective, kemeny_brute_force(rs).objective);
    ASSERT_EQ(kemeny_objective(bb.consensus, rs), bb.objective);
    ASSERT_TRUE(bb.optimal);
  }
}

TEST(KemenyBranchBound, HandlesTiedInputsAndLargerN) {
  std::mt19937_64 gen(23);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Ranking> rs;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> s(6);
      for (auto& v : s) v = pick(gen);
      rs.push_back(rank_from_scores(s, Direction::HigherBetter, TiePolicy::Fractional));
    }
    ASSERT_EQ(kemeny_branch_bound(rs).objective, oracle::kemeny_enumerate(oracle::raw(rs)).cost);
  }
  const std::vector<Ranking> unanimous(4, Ranking::identity(12));
  const auto s = kemeny_branch_bound(unanimous);
  EXPECT_EQ(s.objective, 0.0);
  EXPECT_EQ(s.consensus, Ranking::identity(12));
}

TEST(BordaApproxRatio, Examples) {
  const std::vector<Ranking> unanimous(3, Ranking({2, 3, 1}));
  EXPECT_EQ(borda_approx_ratio(unanimous), 1.0);
  const std::vector<Ranking> cycle{Ranking({1, 2, 3}), Ranking({2, 3, 1}), Ranking({3, 1, 2})};
  EXPECT_EQ(borda_approx_ratio(cycle), 1.0);
}

TEST(BordaApproxRatio, WithinFiveOnRandomInstances) {
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t t = 1 + gen() % 9;
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < t; ++i) rs.push_back(oracle::random_permutation(n, gen));
    const double r = borda_approx_ratio(rs);
    ASSERT_GE(r, 1.0);
    ASSERT_LE(r, 5.0);
  }
}
