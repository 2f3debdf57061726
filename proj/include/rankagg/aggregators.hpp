#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankagg/ranking.hpp"

namespace rankagg {

/// Task-level scores s(n, t): N systems by T tasks, row-major.
class TaskScoreMatrix {
 public:
  TaskScoreMatrix() = default;
  TaskScoreMatrix(std::vector<std::string> system_names, std::vector<std::string> task_names,
                  std::vector<Direction> directions, std::vector<double> scores);

  std::size_t n_systems() const noexcept { return system_names_.size(); }
  std::size_t n_tasks() const noexcept { return task_names_.size(); }

  double at(std::size_t system, std::size_t task) const {
    return scores_[system * n_tasks() + task];
  }
  std::vector<double> column(std::size_t task) const;
  std::span<const double> row(std::size_t system) const {
    return std::span<const double>(scores_).subspan(system * n_tasks(), n_tasks());
  }

  const std::vector<std::string>& system_names() const noexcept { return system_names_; }
  const std::vector<std::string>& task_names() const noexcept { return task_names_; }
  const std::vector<Direction>& directions() const noexcept { return directions_; }
  const std::vector<double>& scores() const noexcept { return scores_; }

  /// Matrix restricted to the given task columns, in the given order.
  TaskScoreMatrix select_tasks(std::span<const std::size_t> tasks) const;
  /// Multiplies every score of one task by `factor`.
  TaskScoreMatrix with_scaled_task(std::size_t task, double factor) const;
  void set_directions(std::vector<Direction> directions);

 private:
  std::vector<std::string> system_names_;
  std::vector<std::string> task_names_;
  std::vector<Direction> directions_;
  std::vector<double> scores_;
};

/// Scores of every system on every instance of one task (N x K, row-major).
struct TaskInstances {
  std::string name;
  Direction direction = Direction::HigherBetter;
  std::vector<std::string> instance_ids;
  std::vector<double> scores;

  std::size_t n_instances() const noexcept { return instance_ids.size(); }
  double at(std::size_t system, std::size_t instance) const {
    return scores[system * n_instances() + instance];
  }
  double& at(std::size_t system, std::size_t instance) {
    return scores[system * n_instances() + instance];
  }
  std::vector<double> instance_column(std::size_t instance) const;

  friend bool operator==(const TaskInstances&, const TaskInstances&) = default;
};

/// Instance-level scores s(n, t, k). K may differ between tasks but every
/// system is scored on every instance.
class InstanceScoreSet {
 public:
  InstanceScoreSet() = default;
  InstanceScoreSet(std::vector<std::string> system_names, std::vector<TaskInstances> tasks);

  std::size_t n_systems() const noexcept { return system_names_.size(); }
  std::size_t n_tasks() const noexcept { return tasks_.size(); }
  const std::vector<std::string>& system_names() const noexcept { return system_names_; }
  const std::vector<TaskInstances>& tasks() const noexcept { return tasks_; }
  const TaskInstances& task(std::size_t t) const { return tasks_.at(t); }
  /// Mutable access for corruption operators; callers must keep values finite.
  TaskInstances& mutable_task(std::size_t t) { return tasks_.at(t); }

  InstanceScoreSet select_tasks(std::span<const std::size_t> tasks) const;

  friend bool operator==(const InstanceScoreSet&, const InstanceScoreSet&) = default;

 private:
  std::vector<std::string> system_names_;
  std::vector<TaskInstances> tasks_;
};

enum class Method { Mean, SigmaStar, OneLevel, TwoLevel };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);
std::vector<Method> parse_methods(std::string_view comma_separated);

struct AggregationResult {
  Ranking ranking;                     // strict, ties resolved by system index
  std::vector<double> per_system_value;  // rank sums (Borda) or means (mean)
  Method method = Method::SigmaStar;
  std::vector<std::vector<std::size_t>> tie_groups;  // systems sharing a value
};

TaskScoreMatrix mean_instance_aggregate(const InstanceScoreSet& data);

/// Ranks systems by their mean score across tasks. All tasks must share one
/// direction, since averaging across opposite orientations is meaningless.
AggregationResult mean_task_aggregate(const TaskScoreMatrix& m);

/// Borda count: per-system rank sums, ranked ascending.
AggregationResult borda(std::span<const Ranking> rankings);

/// Borda over the per-task rankings of a task-level matrix.
AggregationResult sigma_star(const TaskScoreMatrix& m, TiePolicy tie_policy);

/// Borda per task over its instances, then Borda over the task rankings.
AggregationResult sigma_two_level(const InstanceScoreSet& data, TiePolicy tie_policy);

/// One Borda over all instance rankings of all tasks pooled together.
AggregationResult sigma_one_level(const InstanceScoreSet& data, TiePolicy tie_policy);

/// Dispatch on method for instance-level data. Mean and SigmaStar first take
/// per-task instance means.
AggregationResult aggregate(const InstanceScoreSet& data, Method method, TiePolicy tie_policy);
/// Dispatch for task-level data; only Mean and SigmaStar apply.
AggregationResult aggregate(const TaskScoreMatrix& data, Method method, TiePolicy tie_policy);

/// Per-instance rankings of one task.
std::vector<Ranking> instance_rankings(const TaskInstances& task, TiePolicy tie_policy);

enum class PairwiseTieMode {
  CreditFirst,  // equal scores count for the first system
  Split,        // equal scores count half for each
};

enum class Verdict { FirstBetter, SecondBetter, Tie };

struct PairwiseResult {
  double wins_a = 0.0;
  double wins_b = 0.0;
  Verdict verdict = Verdict::Tie;
};

/// Counts how often system A scores at least as well as B across K paired
/// scores and declares the majority winner.
PairwiseResult pairwise_compare(std::span<const double> scores_a, std::span<const double> scores_b,
                                Direction direction,
                                PairwiseTieMode tie_mode = PairwiseTieMode::CreditFirst);

}  // namespace rankagg
