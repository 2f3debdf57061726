#include "rankagg/synthetic.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "rankagg/error.hpp"
#include "rankagg/parallel.hpp"

namespace rankagg {

namespace {

std::string padded(std::string_view prefix, std::size_t value, std::size_t count) {
  const std::size_t width = std::to_string(count).size();
  std::string digits = std::to_string(value);
  return std::string(prefix) + std::string(width - digits.size(), '0') + digits;
}

void check_task_indices(const InstanceScoreSet& data, const CorruptionSpec& spec) {
  for (std::size_t t : spec.task_indices) {
    if (t >= data.n_tasks()) {
      throw Error("corruption task index " + std::to_string(t) + " out of range (T = " +
                  std::to_string(data.n_tasks()) + ")");
    }
  }
}

}  // namespace

void SyntheticConfig::validate() const {
  if (n_systems < 1 || n_tasks < 1 || n_instances < 1) {
    throw Error("synthetic config needs N, T, K >= 1");
  }
  if (!(phi >= 0.0 && phi <= 1.0)) throw Error("phi must lie in [0, 1]");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("beta must be positive");
}

std::string to_json_string(const SyntheticConfig& cfg) {
  const nlohmann::ordered_json j = {
      {"n_systems", cfg.n_systems}, {"n_tasks", cfg.n_tasks}, {"n_instances", cfg.n_instances},
      {"phi", cfg.phi},             {"beta", cfg.beta},       {"seed", cfg.seed},
  };
  return j.dump(2);
}

SyntheticConfig synthetic_config_from_json(std::string_view text) {
  SyntheticConfig cfg;
  try {
    const auto j = nlohmann::json::parse(text);
    cfg.n_systems = j.at("n_systems").get<std::size_t>();
    cfg.n_tasks = j.at("n_tasks").get<std::size_t>();
    cfg.n_instances = j.at("n_instances").get<std::size_t>();
    cfg.phi = j.at("phi").get<double>();
    cfg.beta = j.value("beta", 1.0);
    cfg.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid synthetic config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

double sample_gumbel(double location, double scale, Rng& rng) {
  if (!(scale > 0.0)) throw Error("Gumbel scale must be positive");
  return location - scale * std::log(-std::log(rng.uniform_open()));
}

InstanceScoreSet generate_scores(const SyntheticConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t n = cfg.n_systems;
  const std::size_t k_count = cfg.n_instances;
  std::vector<std::string> systems;
  for (std::size_t s = 1; s <= n; ++s) systems.push_back(padded("sys", s, n));

  std::vector<TaskInstances> tasks(cfg.n_tasks);
  parallel_for(cfg.n_tasks, threads, [&](std::size_t t) {
    auto& task = tasks[t];
    task.name = padded("task", t + 1, cfg.n_tasks);
    task.direction = Direction::HigherBetter;
    for (std::size_t k = 0; k < k_count; ++k) task.instance_ids.push_back(padded("i", k + 1, k_count));
    task.scores.resize(n * k_count);
    for (std::size_t s = 0; s < n; ++s) {
      const double location = cfg.phi * static_cast<double>(s + 1);
      for (std::size_t k = 0; k < k_count; ++k) {
        auto rng = Rng::keyed(cfg.seed, Stream::Scores, {s, t, k});
        task.scores[s * k_count + k] = sample_gumbel(location, cfg.beta, rng);
      }
    }
  });
  return InstanceScoreSet(std::move(systems), std::move(tasks));
}

InstanceScoreSet corrupt_reverse(const InstanceScoreSet& data, const CorruptionSpec& spec,
                                 std::uint64_t seed, double beta) {
  if (spec.kind != CorruptionKind::Reverse) throw Error("corrupt_reverse needs a Reverse spec");
  check_task_indices(data, spec);
  InstanceScoreSet out = data;
  for (std::size_t t : spec.task_indices) {
    auto& task = out.mutable_task(t);
    for (std::size_t s = 0; s < data.n_systems(); ++s) {
      const double location = -spec.reverse_slope * static_cast<double>(s + 1);
      for (std::size_t k = 0; k < task.n_instances(); ++k) {
        auto rng = Rng::keyed(seed, Stream::Corruption, {s, t, k});
        task.at(s, k) = sample_gumbel(location, beta, rng);
      }
    }
  }
  return out;
}

InstanceScoreSet corrupt_scale(const InstanceScoreSet& data, const CorruptionSpec& spec) {
  if (spec.kind != CorruptionKind::Scale) throw Error("corrupt_scale needs a Scale spec");
  if (!(spec.scale_factor > 0.0) || !std::isfinite(spec.scale_factor)) {
    throw Error("scale factor must be positive");
  }
  check_task_indices(data, spec);
  InstanceScoreSet out = data;
  for (std::size_t t : spec.task_indices) {
    for (double& v : out.mutable_task(t).scores) v *= spec.scale_factor;
  }
  return out;
}

Ranking ground_truth_ranking(std::size_t n_systems) {
  return Ranking::identity(n_systems).reversed();
}

}  // namespace rankagg
