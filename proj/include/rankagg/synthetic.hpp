#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rankagg/aggregators.hpp"
#include "rankagg/rng.hpp"

namespace rankagg {

/// Gumbel score model: system n (1-based) draws every instance score from a
/// Gumbel law with location phi * n and scale beta.
struct SyntheticConfig {
  std::size_t n_systems = 20;
  std::size_t n_tasks = 20;
  std::size_t n_instances = 20;
  double phi = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const SyntheticConfig&, const SyntheticConfig&) = default;
};

std::string to_json_string(const SyntheticConfig& cfg);
SyntheticConfig synthetic_config_from_json(std::string_view text);

enum class CorruptionKind { Reverse, Scale };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::Reverse;
  std::vector<std::size_t> task_indices;
  double scale_factor = 1.0;  // Scale only
  /// Reverse only: corrupted location is -reverse_slope * n. The default 1
  /// ignores phi; set it to phi for the symmetric variant.
  double reverse_slope = 1.0;
};

double sample_gumbel(double location, double scale, Rng& rng);

InstanceScoreSet generate_scores(const SyntheticConfig& cfg, unsigned threads = 1);

/// Resamples every score of the selected tasks from Gumbel(-slope * n, beta),
/// so those tasks favour the reverse of the ground truth.
InstanceScoreSet corrupt_reverse(const InstanceScoreSet& data, const CorruptionSpec& spec,
                                 std::uint64_t seed, double beta = 1.0);

/// Multiplies every score of the selected tasks by spec.scale_factor.
InstanceScoreSet corrupt_scale(const InstanceScoreSet& data, const CorruptionSpec& spec);

/// The ranking the generator favours: system N first, system 1 last.
Ranking ground_truth_ranking(std::size_t n_systems);

}  // namespace rankagg
