#include "rankagg/rng.hpp"

#include "rankagg/error.hpp"

namespace rankagg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, Stream stream,
                          std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(stream) * kGolden));
  std::uint64_t pos = 1;
  for (std::uint64_t k : key) {
    h = mix64(h ^ mix64(k + pos * kGolden));
    ++pos;
  }
  return h;
}

Rng Rng::keyed(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> key) {
  return Rng(derive(seed, stream, key));
}

std::uint64_t Rng::next_u64() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform_open() noexcept {
  // 53 random bits centred in their bucket: never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below needs a positive bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw Error("cannot sample more items than available");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace rankagg
