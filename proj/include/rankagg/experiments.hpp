#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankagg/aggregators.hpp"
#include "rankagg/dispersion.hpp"

namespace rankagg {

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// One grid point for one method: mean and sample std over replications.
struct Cell {
  std::vector<double> params;  // one value per axis, in axis order
  Method method = Method::Mean;
  double mean = 0.0;
  double std = 0.0;
  std::size_t n = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct ExperimentReport {
  std::string experiment;  // manipulation | scaling | subset
  std::vector<Axis> axes;
  std::vector<Method> methods;
  std::vector<Cell> cells;
  std::size_t n_replications = 0;
  std::uint64_t seed = 0;
  std::string config_json = "{}";

  /// Throws if the grid point or method is absent.
  const Cell& cell(std::span<const double> params, Method method) const;
};

struct ManipulationConfig {
  std::size_t n_systems = 20;
  std::size_t n_tasks = 20;
  std::size_t n_instances = 20;
  std::vector<double> phis{0.1, 0.5, 1.0};
  std::vector<std::size_t> corrupted_counts;  // empty: every count 0..T
  std::vector<Method> methods{Method::Mean, Method::OneLevel, Method::TwoLevel};
  std::size_t n_reps = 50;
  std::uint64_t seed = 0;
  double beta = 1.0;
  /// Corrupted tasks draw from Gumbel(-n) by default, or Gumbel(-phi * n).
  bool corruption_scales_with_phi = false;
  TiePolicy tie_policy = TiePolicy::Fractional;
  unsigned threads = 1;
};

/// Error (normalized Kendall distance to the ground truth) of each method as
/// more tasks are reverse-corrupted. Axes: phi, corrupted_tasks.
ExperimentReport run_manipulation_robustness(const ManipulationConfig& cfg);

/// Smallest corrupted-task count whose mean error exceeds `threshold` at the
/// given phi, or nullopt if none does.
std::optional<std::size_t> minimal_corruption_above(const ExperimentReport& report, double phi,
                                                    Method method, double threshold);

struct ScalingConfig {
  std::size_t n_systems = 20;
  std::size_t n_tasks = 20;
  std::size_t n_instances = 20;
  std::vector<double> phis{0.05, 0.3};
  std::vector<double> scale_factors{0.1, 0.5, 1.0, 2.0, 5.0, 7.0, 10.0, 100.0};
  std::vector<Method> methods{Method::Mean, Method::SigmaStar, Method::OneLevel,
                              Method::TwoLevel};
  std::size_t n_reps = 50;
  std::uint64_t seed = 0;
  double beta = 1.0;
  /// Draw the rescaled task from the reversed law before rescaling it, so
  /// its signal opposes the other tasks.
  bool reverse_scaled_task = true;
  TiePolicy tie_policy = TiePolicy::Fractional;
  unsigned threads = 1;
};

/// Error of each method when one random task is rescaled by x. Rank-based
/// methods are checked to return the exact same ranking for every x; a
/// mismatch throws. Axes: phi, scale_factor.
ExperimentReport run_scaling_robustness(const ScalingConfig& cfg);

struct SubsetConfig {
  std::vector<Method> methods{Method::Mean, Method::SigmaStar};
  std::vector<std::size_t> subset_sizes;  // empty: every size 1..T
  std::size_t n_samples = 100;
  std::uint64_t seed = 0;
  TiePolicy tie_policy = TiePolicy::Fractional;
  unsigned threads = 1;
};

/// Kendall tau between each method's ranking on a random task subset and its
/// ranking on all tasks. Axis: subset_size.
ExperimentReport run_subset_robustness(const TaskScoreMatrix& data, const SubsetConfig& cfg);
ExperimentReport run_subset_robustness(const InstanceScoreSet& data, const SubsetConfig& cfg);

struct AgreementSummary {
  std::map<std::size_t, double> top_k_agreement;
  std::map<std::size_t, double> last_k_agreement;
  /// True when a tie group of either input straddles the top-K or last-K cut.
  std::map<std::size_t, bool> tie_straddled;
  double full_tau = 0.0;
};

AgreementSummary run_agreement_analysis(const AggregationResult& a, const AggregationResult& b,
                                        std::span<const std::size_t> ks);

struct DispersionConfig {
  TiePolicy tie_policy = TiePolicy::Fractional;
  std::size_t n_random = 100;
  std::uint64_t seed = 0;
  std::size_t exact_max_n = 15;  // exact Kemeny and sandwich only up to this N
};

/// Dispersion of sigma_star, the mean ranking, the exact Kemeny consensus
/// (small N) and random permutations against the per-task rankings.
DispersionReport run_dispersion_analysis(const TaskScoreMatrix& data, const DispersionConfig& cfg);

}  // namespace rankagg
