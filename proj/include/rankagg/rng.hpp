#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace rankagg {

/// Stream labels mixed into keyed RNG derivations so unrelated consumers of
/// one seed never share draws.
enum class Stream : std::uint64_t {
  Scores = 1,
  Corruption = 2,
  TaskChoice = 3,
  Replication = 4,
  Subset = 5,
  RandomBaseline = 6,
  PairSample = 7,
  Fixture = 8,
};

/// SplitMix64 generator. Substreams are derived by hashing a seed together
/// with a key tuple, so draws for (n, t, k) are fixed regardless of which
/// thread or in which order they are produced. All arithmetic is integer or
/// IEEE double, so sequences are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t state) noexcept : state_(state) {}

  static Rng keyed(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> key = {});
  static std::uint64_t derive(std::uint64_t seed, Stream stream,
                              std::initializer_list<std::uint64_t> key = {});

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept;
  /// Uniform integer in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::uint64_t state_;
};

}  // namespace rankagg
