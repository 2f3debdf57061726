#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "rankagg/dispersion.hpp"
#include "rankagg/error.hpp"
#include "rankagg/kemeny.hpp"

using namespace rankagg;

TEST(PerformanceDispersion, Examples) {
  const std::vector<Ranking> same(3, Ranking({1, 3, 2}));
  EXPECT_EQ(performance_dispersion(Ranking({1, 3, 2}), same), 0.0);
  const std::vector<Ranking> rev{Ranking({1, 2, 3}), Ranking({3, 2, 1})};
  EXPECT_EQ(performance_dispersion(Ranking({1, 2, 3}), rev), 3.0);
}

TEST(PairwiseDispersion, Examples) {
  const std::vector<Ranking> same(4, Ranking({2, 1, 3}));
  EXPECT_EQ(pairwise_dispersion(same), 0.0);
  const std::vector<Ranking> two{Ranking({1, 2}), Ranking({2, 1})};
  EXPECT_EQ(pairwise_dispersion(two), 1.0);
  const std::vector<Ranking> three{Ranking({1, 2, 3}), Ranking({1, 2, 3}), Ranking({3, 2, 1})};
  EXPECT_EQ(pairwise_dispersion(three), 2.0);
  EXPECT_THROW(pairwise_dispersion(std::vector<Ranking>{Ranking({1})}), Error);
}

TEST(PairwiseDispersionSubsampled, Behaviour) {
  auto rng = Rng::keyed(1, Stream::Fixture);
  const std::vector<Ranking> same(10, Ranking({2, 1, 3}));
  const auto z = pairwise_dispersion_subsampled(same, 20, rng);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.std_error, 0.0);

  std::mt19937_64 gen(2);
  std::vector<Ranking> rs;
  for (int i = 0; i < 50; ++i) rs.push_back(oracle::random_permutation(8, gen));
  const double exact = pairwise_dispersion(rs);
  const auto est = pairwise_dispersion_subsampled(rs, 300, rng);
  EXPECT_LE(std::abs(est.value - exact), 3 * est.std_error);
  const auto full = pairwise_dispersion_subsampled(rs, 1, rng, true);
  EXPECT_NEAR(full.value, exact, 1e-12);
}

TEST(RandomBaseline, ExpectedDistanceOfUniformPermutation) {
  auto rng = Rng::keyed(3, Stream::Fixture);
  const std::vector<Ranking> one{Ranking::identity(10)};
  const auto b = random_baseline(one, 4000, rng);
  EXPECT_NEAR(b.mean, 10.0 * 9.0 / 4.0, 3 * b.std / std::sqrt(4000.0));
  const std::vector<Ranking> single{Ranking({1})};
  const auto s = random_baseline(single, 10, rng);
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.std, 0.0);
}

TEST(Sandwich, Examples) {
  const std::vector<Ranking> same(3, Ranking({2, 1, 3}));
  const auto u = sandwich_check(same);
  EXPECT_EQ(u.lower, 0.0);
  EXPECT_EQ(u.value, 0.0);
  EXPECT_EQ(u.upper, 0.0);
  EXPECT_TRUE(u.ok);
  const std::vector<Ranking> three{Ranking({1, 2, 3}), Ranking({1, 2, 3}), Ranking({3, 2, 1})};
  const auto s = sandwich_check(three);
  EXPECT_EQ(s.lower, 1.0);
  EXPECT_EQ(s.value, 1.0);
  EXPECT_EQ(s.upper, 2.0);
  EXPECT_TRUE(s.ok);
}

TEST(Sandwich, HoldsOnRandomInstances) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t t = 2 + gen() % 7;
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < t; ++i) rs.push_back(oracle::random_permutation(n, gen));
    ASSERT_TRUE(sandwich_check(rs).ok);
  }
}
