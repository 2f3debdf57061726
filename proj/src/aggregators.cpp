#include "rankagg/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rankagg/error.hpp"

namespace rankagg {

namespace {

void require_unique(const std::vector<std::string>& names, std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error("duplicate " + std::string(what) + " name '" + n + "'");
    }
  }
}

void require_finite_cells(const std::vector<double>& v, std::size_t cols,
                          const std::vector<std::string>& systems, std::string_view task) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error("non-finite score for system '" + systems[i / cols] + "' on task '" +
                  std::string(task) + "'");
    }
  }
}

std::vector<std::vector<std::size_t>> find_tie_groups(const std::vector<double>& values,
                                                      const Ranking& ranking) {
  std::vector<std::vector<std::size_t>> groups;
  const auto order = ranking.order();
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && values[order[end]] == values[order[begin]]) ++end;
    if (end - begin > 1) {
      std::vector<std::size_t> g(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                 order.begin() + static_cast<std::ptrdiff_t>(end));
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
    begin = end;
  }
  return groups;
}

std::vector<double> rank_sums(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw Error("Borda needs at least one input ranking");
  const std::size_t n = rankings.front().size();
  std::vector<double> sums(n, 0.0);
  for (const auto& r : rankings) {
    if (r.size() != n) {
      throw Error("Borda inputs cover different numbers of systems (" + std::to_string(n) +
                  " vs " + std::to_string(r.size()) + ")");
    }
    for (std::size_t i = 0; i < n; ++i) sums[i] += r[i];
  }
  return sums;
}

}  // namespace

TaskScoreMatrix::TaskScoreMatrix(std::vector<std::string> system_names,
                                 std::vector<std::string> task_names,
                                 std::vector<Direction> directions, std::vector<double> scores)
    : system_names_(std::move(system_names)),
      task_names_(std::move(task_names)),
      directions_(std::move(directions)),
      scores_(std::move(scores)) {
  if (system_names_.empty() || task_names_.empty()) {
    throw Error("score matrix needs at least one system and one task");
  }
  if (directions_.size() != task_names_.size()) {
    throw Error("one direction per task is required");
  }
  if (scores_.size() != system_names_.size() * task_names_.size()) {
    throw Error("score matrix dimensions do not match its labels");
  }
  require_unique(system_names_, "system");
  require_unique(task_names_, "task");
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw Error("non-finite score for system '" + system_names_[i / n_tasks()] +
                  "' on task '" + task_names_[i % n_tasks()] + "'");
    }
  }
}

std::vector<double> TaskScoreMatrix::column(std::size_t task) const {
  std::vector<double> c(n_systems());
  for (std::size_t n = 0; n < n_systems(); ++n) c[n] = at(n, task);
  return c;
}

TaskScoreMatrix TaskScoreMatrix::select_tasks(std::span<const std::size_t> tasks) const {
  std::vector<std::string> names;
  std::vector<Direction> dirs;
  std::vector<double> scores;
  scores.reserve(n_systems() * tasks.size());
  for (std::size_t t : tasks) {
    if (t >= n_tasks()) throw Error("task index " + std::to_string(t) + " out of range");
    names.push_back(task_names_[t]);
    dirs.push_back(directions_[t]);
  }
  for (std::size_t n = 0; n < n_systems(); ++n) {
    for (std::size_t t : tasks) scores.push_back(at(n, t));
  }
  return TaskScoreMatrix(system_names_, std::move(names), std::move(dirs), std::move(scores));
}

TaskScoreMatrix TaskScoreMatrix::with_scaled_task(std::size_t task, double factor) const {
  if (task >= n_tasks()) throw Error("task index " + std::to_string(task) + " out of range");
  if (!(factor > 0.0)) throw Error("scale factor must be positive");
  TaskScoreMatrix out = *this;
  for (std::size_t n = 0; n < n_systems(); ++n) out.scores_[n * n_tasks() + task] *= factor;
  return out;
}

void TaskScoreMatrix::set_directions(std::vector<Direction> directions) {
  if (directions.size() != n_tasks()) throw Error("one direction per task is required");
  directions_ = std::move(directions);
}

std::vector<double> TaskInstances::instance_column(std::size_t instance) const {
  const std::size_t n = n_instances() == 0 ? 0 : scores.size() / n_instances();
  std::vector<double> c(n);
  for (std::size_t s = 0; s < n; ++s) c[s] = at(s, instance);
  return c;
}

InstanceScoreSet::InstanceScoreSet(std::vector<std::string> system_names,
                                   std::vector<TaskInstances> tasks)
    : system_names_(std::move(system_names)), tasks_(std::move(tasks)) {
  if (system_names_.empty() || tasks_.empty()) {
    throw Error("instance score set needs at least one system and one task");
  }
  require_unique(system_names_, "system");
  std::vector<std::string> task_names;
  for (const auto& t : tasks_) {
    task_names.push_back(t.name);
    if (t.instance_ids.empty()) throw Error("task '" + t.name + "' has no instances");
    if (t.scores.size() != t.n_instances() * n_systems()) {
      throw Error("task '" + t.name + "' does not score every system on every instance");
    }
    require_unique(t.instance_ids, "instance");
    require_finite_cells(t.scores, t.n_instances(), system_names_, t.name);
  }
  require_unique(task_names, "task");
}

InstanceScoreSet InstanceScoreSet::select_tasks(std::span<const std::size_t> tasks) const {
  std::vector<TaskInstances> picked;
  for (std::size_t t : tasks) {
    if (t >= n_tasks()) throw Error("task index " + std::to_string(t) + " out of range");
    picked.push_back(tasks_[t]);
  }
  return InstanceScoreSet(system_names_, std::move(picked));
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Mean: return "mean";
    case Method::SigmaStar: return "sigma_star";
    case Method::OneLevel: return "one_level";
    case Method::TwoLevel: return "two_level";
  }
  return "unknown";
}

Method parse_method(std::string_view s) {
  if (s == "mean") return Method::Mean;
  if (s == "sigma_star" || s == "borda") return Method::SigmaStar;
  if (s == "one_level" || s == "sigma_one_level") return Method::OneLevel;
  if (s == "two_level" || s == "sigma_two_level") return Method::TwoLevel;
  throw Error("unknown method '" + std::string(s) +
              "' (expected mean|sigma_star|one_level|two_level)");
}

std::vector<Method> parse_methods(std::string_view comma_separated) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const auto next = comma_separated.find(',', pos);
    const auto piece = comma_separated.substr(pos, next == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : next - pos);
    if (!piece.empty()) out.push_back(parse_method(piece));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw Error("no aggregation method given");
  return out;
}

TaskScoreMatrix mean_instance_aggregate(const InstanceScoreSet& data) {
  const std::size_t n = data.n_systems();
  const std::size_t t_count = data.n_tasks();
  std::vector<std::string> names;
  std::vector<Direction> dirs;
  std::vector<double> scores(n * t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    const auto& task = data.task(t);
    names.push_back(task.name);
    dirs.push_back(task.direction);
    for (std::size_t s = 0; s < n; ++s) {
      double sum = 0.0;
      for (std::size_t k = 0; k < task.n_instances(); ++k) sum += task.at(s, k);
      scores[s * t_count + t] = sum / static_cast<double>(task.n_instances());
    }
  }
  return TaskScoreMatrix(data.system_names(), std::move(names), std::move(dirs),
                         std::move(scores));
}

AggregationResult mean_task_aggregate(const TaskScoreMatrix& m) {
  const Direction dir = m.directions().front();
  for (Direction d : m.directions()) {
    if (d != dir) throw Error("mean aggregation undefined across mixed-direction metrics");
  }
  std::vector<double> means(m.n_systems());
  for (std::size_t n = 0; n < m.n_systems(); ++n) {
    double sum = 0.0;
    for (double v : m.row(n)) sum += v;
    means[n] = sum / static_cast<double>(m.n_tasks());
  }
  AggregationResult out;
  out.ranking = rank_from_scores(means, dir, TiePolicy::StableIndex);
  out.tie_groups = find_tie_groups(means, out.ranking);
  out.per_system_value = std::move(means);
  out.method = Method::Mean;
  return out;
}

AggregationResult borda(std::span<const Ranking> rankings) {
  AggregationResult out;
  out.per_system_value = rank_sums(rankings);
  out.ranking = argsort_argsort(out.per_system_value);
  out.tie_groups = find_tie_groups(out.per_system_value, out.ranking);
  out.method = Method::SigmaStar;
  return out;
}

AggregationResult sigma_star(const TaskScoreMatrix& m, TiePolicy tie_policy) {
  std::vector<Ranking> per_task;
  per_task.reserve(m.n_tasks());
  for (std::size_t t = 0; t < m.n_tasks(); ++t) {
    per_task.push_back(rank_from_scores(m.column(t), m.directions()[t], tie_policy));
  }
  auto out = borda(per_task);
  out.method = Method::SigmaStar;
  return out;
}

std::vector<Ranking> instance_rankings(const TaskInstances& task, TiePolicy tie_policy) {
  std::vector<Ranking> out;
  out.reserve(task.n_instances());
  for (std::size_t k = 0; k < task.n_instances(); ++k) {
    out.push_back(rank_from_scores(task.instance_column(k), task.direction, tie_policy));
  }
  return out;
}

AggregationResult sigma_two_level(const InstanceScoreSet& data, TiePolicy tie_policy) {
  std::vector<Ranking> per_task;
  per_task.reserve(data.n_tasks());
  for (const auto& task : data.tasks()) {
    const auto sums = rank_sums(instance_rankings(task, tie_policy));
    // Tied task-level rank sums follow the same tie policy as the instances.
    per_task.push_back(rank_from_scores(sums, Direction::LowerBetter, tie_policy));
  }
  auto out = borda(per_task);
  out.method = Method::TwoLevel;
  return out;
}

AggregationResult sigma_one_level(const InstanceScoreSet& data, TiePolicy tie_policy) {
  std::vector<Ranking> pooled;
  for (const auto& task : data.tasks()) {
    auto r = instance_rankings(task, tie_policy);
    pooled.insert(pooled.end(), std::make_move_iterator(r.begin()),
                  std::make_move_iterator(r.end()));
  }
  auto out = borda(pooled);
  out.method = Method::OneLevel;
  return out;
}

AggregationResult aggregate(const InstanceScoreSet& data, Method method, TiePolicy tie_policy) {
  switch (method) {
    case Method::Mean: return mean_task_aggregate(mean_instance_aggregate(data));
    case Method::SigmaStar: return sigma_star(mean_instance_aggregate(data), tie_policy);
    case Method::OneLevel: return sigma_one_level(data, tie_policy);
    case Method::TwoLevel: return sigma_two_level(data, tie_policy);
  }
  throw Error("unknown method");
}

AggregationResult aggregate(const TaskScoreMatrix& data, Method method, TiePolicy tie_policy) {
  switch (method) {
    case Method::Mean: return mean_task_aggregate(data);
    case Method::SigmaStar: return sigma_star(data, tie_policy);
    case Method::OneLevel:
    case Method::TwoLevel:
      throw Error("method '" + std::string(to_string(method)) +
                  "' needs instance-level scores");
  }
  throw Error("unknown method");
}

PairwiseResult pairwise_compare(std::span<const double> scores_a, std::span<const double> scores_b,
                                Direction direction, PairwiseTieMode tie_mode) {
  if (scores_a.empty()) throw Error("pairwise comparison needs at least one paired score");
  if (scores_a.size() != scores_b.size()) {
    throw Error("pairwise comparison needs equally many scores for both systems");
  }
  PairwiseResult out;
  for (std::size_t k = 0; k < scores_a.size(); ++k) {
    const double a = scores_a[k];
    const double b = scores_b[k];
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw Error("non-finite score at index " + std::to_string(k));
    }
    if (a == b) {
      if (tie_mode == PairwiseTieMode::CreditFirst) {
        out.wins_a += 1.0;
      } else {
        out.wins_a += 0.5;
      }
    } else if ((direction == Direction::HigherBetter) == (a > b)) {
      out.wins_a += 1.0;
    }
  }
  out.wins_b = static_cast<double>(scores_a.size()) - out.wins_a;
  if (out.wins_a > out.wins_b) {
    out.verdict = Verdict::FirstBetter;
  } else if (out.wins_b > out.wins_a) {
    out.verdict = Verdict::SecondBetter;
  } else {
    out.verdict = Verdict::Tie;
  }
  return out;
}

}  // namespace rankagg
