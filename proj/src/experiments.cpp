#include "rankagg/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <string>

#include "rankagg/error.hpp"
#include "rankagg/kemeny.hpp"
#include "rankagg/parallel.hpp"
#include "rankagg/synthetic.hpp"

namespace rankagg {

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return m;
}

std::uint64_t key_of(double value) { return std::bit_cast<std::uint64_t>(value); }

nlohmann::ordered_json method_labels(std::span<const Method> methods) {
  auto j = nlohmann::ordered_json::array();
  for (Method m : methods) j.push_back(std::string(to_string(m)));
  return j;
}

void require_methods(std::span<const Method> methods) {
  if (methods.empty()) throw Error("experiment needs at least one method");
}

std::vector<std::size_t> default_range(std::vector<std::size_t> given, std::size_t first,
                                       std::size_t last) {
  if (!given.empty()) return given;
  for (std::size_t v = first; v <= last; ++v) given.push_back(v);
  return given;
}

// samples[grid][method][rep] -> cells in grid-major, method-minor order.
void fill_cells(ExperimentReport& report, const std::vector<std::vector<double>>& grid,
                const std::vector<std::vector<std::vector<double>>>& samples) {
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto mo = moments(samples[g][m]);
      report.cells.push_back({grid[g], report.methods[m], mo.mean, mo.std, samples[g][m].size()});
    }
  }
}

}  // namespace

const Cell& ExperimentReport::cell(std::span<const double> params, Method method) const {
  for (const auto& c : cells) {
    if (c.method == method && std::equal(c.params.begin(), c.params.end(), params.begin(),
                                         params.end())) {
      return c;
    }
  }
  throw Error("experiment report has no cell for the requested grid point");
}

ExperimentReport run_manipulation_robustness(const ManipulationConfig& cfg) {
  require_methods(cfg.methods);
  if (cfg.n_reps < 1) throw Error("manipulation experiment needs at least one replication");
  if (cfg.phis.empty()) throw Error("manipulation experiment needs at least one phi");
  const auto counts = default_range(cfg.corrupted_counts, 0, cfg.n_tasks);
  for (std::size_t c : counts) {
    if (c > cfg.n_tasks) {
      throw Error("corrupted task count " + std::to_string(c) + " exceeds T = " +
                  std::to_string(cfg.n_tasks));
    }
  }
  const auto truth = ground_truth_ranking(cfg.n_systems);
  const std::size_t n_jobs = cfg.phis.size() * cfg.n_reps;
  // errors[job][count][method]
  std::vector<std::vector<std::vector<double>>> errors(n_jobs);

  parallel_for(n_jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t p = job / cfg.n_reps;
    const std::size_t rep = job % cfg.n_reps;
    const double phi = cfg.phis[p];
    const auto rep_seed = Rng::derive(cfg.seed, Stream::Replication, {key_of(phi), rep});
    SyntheticConfig scfg{cfg.n_systems, cfg.n_tasks, cfg.n_instances, phi, cfg.beta, rep_seed};
    const auto clean = generate_scores(scfg);

    CorruptionSpec spec;
    spec.kind = CorruptionKind::Reverse;
    for (std::size_t t = 0; t < cfg.n_tasks; ++t) spec.task_indices.push_back(t);
    spec.reverse_slope = cfg.corruption_scales_with_phi ? phi : 1.0;
    const auto reversed = corrupt_reverse(clean, spec, rep_seed, cfg.beta);

    // Corrupted sets are nested prefixes of one random task order.
    auto rng = Rng::keyed(cfg.seed, Stream::TaskChoice, {key_of(phi), rep});
    const auto order = rng.sample_without_replacement(cfg.n_tasks, cfg.n_tasks);

    auto& out = errors[job];
    out.resize(counts.size());
    for (std::size_t ci = 0; ci < counts.size(); ++ci) {
      auto data = clean;
      for (std::size_t i = 0; i < counts[ci]; ++i) {
        data.mutable_task(order[i]) = reversed.task(order[i]);
      }
      for (Method m : cfg.methods) {
        out[ci].push_back(
            normalized_kendall_distance(aggregate(data, m, cfg.tie_policy).ranking, truth));
      }
    }
  });

  ExperimentReport report;
  report.experiment = "manipulation";
  report.axes = {{"phi", cfg.phis}, {"corrupted_tasks", {}}};
  for (std::size_t c : counts) report.axes[1].values.push_back(static_cast<double>(c));
  report.methods = cfg.methods;
  report.n_replications = cfg.n_reps;
  report.seed = cfg.seed;

  std::vector<std::vector<double>> grid;
  std::vector<std::vector<std::vector<double>>> samples;
  for (std::size_t p = 0; p < cfg.phis.size(); ++p) {
    for (std::size_t ci = 0; ci < counts.size(); ++ci) {
      grid.push_back({cfg.phis[p], static_cast<double>(counts[ci])});
      std::vector<std::vector<double>> per_method(cfg.methods.size());
      for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) {
        const auto& e = errors[p * cfg.n_reps + rep][ci];
        for (std::size_t m = 0; m < cfg.methods.size(); ++m) per_method[m].push_back(e[m]);
      }
      samples.push_back(std::move(per_method));
    }
  }
  fill_cells(report, grid, samples);

  report.config_json = nlohmann::ordered_json{
      {"n_systems", cfg.n_systems},
      {"n_tasks", cfg.n_tasks},
      {"n_instances", cfg.n_instances},
      {"phis", cfg.phis},
      {"corrupted_counts", counts},
      {"methods", method_labels(cfg.methods)},
      {"n_reps", cfg.n_reps},
      {"beta", cfg.beta},
      {"corruption_scales_with_phi", cfg.corruption_scales_with_phi},
      {"tie_policy", std::string(to_string(cfg.tie_policy))},
  }.dump();
  return report;
}

std::optional<std::size_t> minimal_corruption_above(const ExperimentReport& report, double phi,
                                                    Method method, double threshold) {
  std::optional<std::size_t> best;
  for (const auto& c : report.cells) {
    if (c.method != method || c.params.size() != 2 || c.params[0] != phi) continue;
    if (c.mean > threshold) {
      const auto count = static_cast<std::size_t>(c.params[1]);
      if (!best || count < *best) best = count;
    }
  }
  return best;
}

ExperimentReport run_scaling_robustness(const ScalingConfig& cfg) {
  require_methods(cfg.methods);
  if (cfg.n_reps < 1) throw Error("scaling experiment needs at least one replication");
  if (cfg.phis.empty() || cfg.scale_factors.empty()) {
    throw Error("scaling experiment needs phi values and scale factors");
  }
  for (double x : cfg.scale_factors) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error("scale factors must be positive");
  }
  const auto truth = ground_truth_ranking(cfg.n_systems);
  const std::size_t n_jobs = cfg.phis.size() * cfg.n_reps;
  // errors[job][factor][method]
  std::vector<std::vector<std::vector<double>>> errors(n_jobs);

  parallel_for(n_jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t p = job / cfg.n_reps;
    const std::size_t rep = job % cfg.n_reps;
    const double phi = cfg.phis[p];
    const auto rep_seed = Rng::derive(cfg.seed, Stream::Replication, {key_of(phi), rep});
    SyntheticConfig scfg{cfg.n_systems, cfg.n_tasks, cfg.n_instances, phi, cfg.beta, rep_seed};
    auto data = generate_scores(scfg);

    auto rng = Rng::keyed(cfg.seed, Stream::TaskChoice, {key_of(phi), rep});
    const auto task = static_cast<std::size_t>(rng.below(cfg.n_tasks));
    if (cfg.reverse_scaled_task) {
      CorruptionSpec rev;
      rev.task_indices = {task};
      data = corrupt_reverse(data, rev, rep_seed, cfg.beta);
    }
    std::vector<Ranking> reference;
    for (Method m : cfg.methods) reference.push_back(aggregate(data, m, cfg.tie_policy).ranking);

    auto& out = errors[job];
    out.resize(cfg.scale_factors.size());
    for (std::size_t xi = 0; xi < cfg.scale_factors.size(); ++xi) {
      CorruptionSpec spec;
      spec.kind = CorruptionKind::Scale;
      spec.task_indices = {task};
      spec.scale_factor = cfg.scale_factors[xi];
      const auto scaled = corrupt_scale(data, spec);
      for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        const auto ranking = aggregate(scaled, cfg.methods[m], cfg.tie_policy).ranking;
        if (cfg.methods[m] != Method::Mean && ranking != reference[m]) {
          throw Error("scale invariance violated by " + std::string(to_string(cfg.methods[m])));
        }
        out[xi].push_back(normalized_kendall_distance(ranking, truth));
      }
    }
  });

  ExperimentReport report;
  report.experiment = "scaling";
  report.axes = {{"phi", cfg.phis}, {"scale_factor", cfg.scale_factors}};
  report.methods = cfg.methods;
  report.n_replications = cfg.n_reps;
  report.seed = cfg.seed;

  std::vector<std::vector<double>> grid;
  std::vector<std::vector<std::vector<double>>> samples;
  for (std::size_t p = 0; p < cfg.phis.size(); ++p) {
    for (std::size_t xi = 0; xi < cfg.scale_factors.size(); ++xi) {
      grid.push_back({cfg.phis[p], cfg.scale_factors[xi]});
      std::vector<std::vector<double>> per_method(cfg.methods.size());
      for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) {
        const auto& e = errors[p * cfg.n_reps + rep][xi];
        for (std::size_t m = 0; m < cfg.methods.size(); ++m) per_method[m].push_back(e[m]);
      }
      samples.push_back(std::move(per_method));
    }
  }
  fill_cells(report, grid, samples);

  report.config_json = nlohmann::ordered_json{
      {"n_systems", cfg.n_systems},
      {"n_tasks", cfg.n_tasks},
      {"n_instances", cfg.n_instances},
      {"phis", cfg.phis},
      {"scale_factors", cfg.scale_factors},
      {"methods", method_labels(cfg.methods)},
      {"n_reps", cfg.n_reps},
      {"beta", cfg.beta},
      {"reverse_scaled_task", cfg.reverse_scaled_task},
      {"tie_policy", std::string(to_string(cfg.tie_policy))},
  }.dump();
  return report;
}

namespace {

template <typename Data>
ExperimentReport subset_impl(const Data& data, const SubsetConfig& cfg) {
  require_methods(cfg.methods);
  if (cfg.n_samples < 1) throw Error("subset experiment needs at least one sample");
  const std::size_t n_tasks = data.n_tasks();
  const auto sizes = default_range(cfg.subset_sizes, 1, n_tasks);
  for (std::size_t s : sizes) {
    if (s < 1) throw Error("subset size must be at least 1 (empty subset)");
    if (s > n_tasks) {
      throw Error("subset size " + std::to_string(s) + " exceeds T = " + std::to_string(n_tasks));
    }
  }
  std::vector<Ranking> full;
  for (Method m : cfg.methods) full.push_back(aggregate(data, m, cfg.tie_policy).ranking);

  const std::size_t n_jobs = sizes.size() * cfg.n_samples;
  std::vector<std::vector<double>> taus(n_jobs);
  parallel_for(n_jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t si = job / cfg.n_samples;
    const std::size_t sample = job % cfg.n_samples;
    auto rng = Rng::keyed(cfg.seed, Stream::Subset, {sizes[si], sample});
    const auto tasks = rng.sample_without_replacement(n_tasks, sizes[si]);
    const auto subset = data.select_tasks(tasks);
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      taus[job].push_back(
          kendall_tau(aggregate(subset, cfg.methods[m], cfg.tie_policy).ranking, full[m]));
    }
  });

  ExperimentReport report;
  report.experiment = "subset";
  report.axes = {{"subset_size", {}}};
  for (std::size_t s : sizes) report.axes[0].values.push_back(static_cast<double>(s));
  report.methods = cfg.methods;
  report.n_replications = cfg.n_samples;
  report.seed = cfg.seed;

  std::vector<std::vector<double>> grid;
  std::vector<std::vector<std::vector<double>>> samples;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    grid.push_back({static_cast<double>(sizes[si])});
    std::vector<std::vector<double>> per_method(cfg.methods.size());
    for (std::size_t sample = 0; sample < cfg.n_samples; ++sample) {
      const auto& t = taus[si * cfg.n_samples + sample];
      for (std::size_t m = 0; m < cfg.methods.size(); ++m) per_method[m].push_back(t[m]);
    }
    samples.push_back(std::move(per_method));
  }
  fill_cells(report, grid, samples);
  report.config_json = nlohmann::ordered_json{
      {"n_systems", data.n_systems()},
      {"n_tasks", n_tasks},
      {"subset_sizes", sizes},
      {"methods", method_labels(cfg.methods)},
      {"n_samples", cfg.n_samples},
      {"tie_policy", std::string(to_string(cfg.tie_policy))},
  }.dump();
  return report;
}

}  // namespace

ExperimentReport run_subset_robustness(const TaskScoreMatrix& data, const SubsetConfig& cfg) {
  return subset_impl(data, cfg);
}

ExperimentReport run_subset_robustness(const InstanceScoreSet& data, const SubsetConfig& cfg) {
  return subset_impl(data, cfg);
}

AgreementSummary run_agreement_analysis(const AggregationResult& a, const AggregationResult& b,
                                        std::span<const std::size_t> ks) {
  const std::size_t n = a.ranking.size();
  if (b.ranking.size() != n) throw Error("agreement analysis needs rankings of equal size");
  AgreementSummary out;
  const auto order_a = a.ranking.order();
  const auto order_b = b.ranking.order();

  const auto straddles = [n](const AggregationResult& r, std::size_t k) {
    for (const auto& g : r.tie_groups) {
      double lo = static_cast<double>(n), hi = 1.0;
      for (std::size_t s : g) {
        lo = std::min(lo, r.ranking[s]);
        hi = std::max(hi, r.ranking[s]);
      }
      const auto top = static_cast<double>(k);
      const auto bottom = static_cast<double>(n - k);
      if ((lo <= top && top < hi) || (lo <= bottom && bottom < hi)) return true;
    }
    return false;
  };

  for (std::size_t k : ks) {
    if (k < 1 || k > n) {
      throw Error("agreement K = " + std::to_string(k) + " outside [1, " + std::to_string(n) +
                  "]");
    }
    const std::set<std::size_t> top_a(order_a.begin(), order_a.begin() + static_cast<long>(k));
    const std::set<std::size_t> last_a(order_a.end() - static_cast<long>(k), order_a.end());
    std::size_t top_common = 0, last_common = 0;
    for (std::size_t i = 0; i < k; ++i) {
      top_common += top_a.count(order_b[i]);
      last_common += last_a.count(order_b[n - 1 - i]);
    }
    out.top_k_agreement[k] = static_cast<double>(top_common) / static_cast<double>(k);
    out.last_k_agreement[k] = static_cast<double>(last_common) / static_cast<double>(k);
    out.tie_straddled[k] = straddles(a, k) || straddles(b, k);
  }
  out.full_tau = kendall_tau(a.ranking, b.ranking);
  return out;
}

DispersionReport run_dispersion_analysis(const TaskScoreMatrix& data, const DispersionConfig& cfg) {
  std::vector<Ranking> per_task;
  for (std::size_t t = 0; t < data.n_tasks(); ++t) {
    per_task.push_back(
        rank_from_scores(data.column(t), data.directions()[t], TiePolicy::StableIndex));
  }
  DispersionReport report;
  report.n_random = cfg.n_random;
  report.seed = cfg.seed;
  report.performance["sigma_star"] =
      performance_dispersion(sigma_star(data, cfg.tie_policy).ranking, per_task);

  const bool single_direction =
      std::all_of(data.directions().begin(), data.directions().end(),
                  [&](Direction d) { return d == data.directions().front(); });
  if (single_direction) {
    report.performance["mean"] =
        performance_dispersion(mean_task_aggregate(data).ranking, per_task);
  }
  if (data.n_systems() <= cfg.exact_max_n) {
    const auto exact = kemeny_branch_bound(per_task, cfg.exact_max_n);
    report.performance["kemeny"] = exact.objective;
    if (per_task.size() >= 2) report.sandwich = sandwich_check(per_task);
  }
  if (per_task.size() >= 2) report.pairwise_mean = pairwise_dispersion(per_task);

  auto rng = Rng::keyed(cfg.seed, Stream::RandomBaseline);
  const auto base = random_baseline(per_task, cfg.n_random, rng);
  report.random_baseline_mean = base.mean;
  report.random_baseline_std = base.std;
  return report;
}

}  // namespace rankagg
