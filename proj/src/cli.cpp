#include "rankagg/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "rankagg/error.hpp"
#include "rankagg/experiments.hpp"
#include "rankagg/io.hpp"
#include "rankagg/report.hpp"
#include "rankagg/synthetic.hpp"

namespace rankagg {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct CommonArgs {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output directory (default: print to stdout)");
  cmd->add_option("--format", c.format, "Comma-separated report formats: csv,json,svg")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();
}

struct DatasetArgs {
  std::string input;
  std::string manifest;
  std::string level = "task";
  std::string direction = "higher";
  std::string directions;
  std::string tie_policy = "fractional";
};

void add_dataset(CLI::App* cmd, DatasetArgs& d) {
  cmd->add_option("--input", d.input, "Score CSV");
  cmd->add_option("--manifest", d.manifest, "Dataset manifest JSON (replaces --input/--level)");
  cmd->add_option("--level", d.level, "Input layout")
      ->check(CLI::IsMember({"task", "instance"}))
      ->capture_default_str();
  cmd->add_option("--direction", d.direction, "Direction for every task")
      ->check(CLI::IsMember({"higher", "lower"}))
      ->capture_default_str();
  cmd->add_option("--directions", d.directions, "JSON sidecar mapping task to higher|lower");
  cmd->add_option("--tie-policy", d.tie_policy, "fractional|competition|stable")
      ->capture_default_str();
}

using Dataset = std::variant<TaskScoreMatrix, InstanceScoreSet>;

struct LoadedDataset {
  Dataset data;
  TiePolicy tie_policy;
  std::string source;
};

LoadedDataset load_dataset(const DatasetArgs& d) {
  if (d.input.empty() == d.manifest.empty()) {
    throw CLI::ValidationError("exactly one of --input or --manifest is required");
  }
  const TiePolicy cli_ties = parse_tie_policy(d.tie_policy);
  std::map<std::string, Direction> overrides;
  Direction fallback = parse_direction(d.direction);
  if (!d.directions.empty()) overrides = load_direction_sidecar(d.directions);

  auto load = [&](DatasetFormat format, const fs::path& path, TiePolicy ties) -> LoadedDataset {
    if (format == DatasetFormat::TaskLevel) {
      auto m = load_task_level(path);
      apply_directions(m, overrides, fallback);
      return {std::move(m), ties, path.string()};
    }
    auto s = load_instance_level(path);
    apply_directions(s, overrides, fallback);
    return {std::move(s), ties, path.string()};
  };

  if (!d.manifest.empty()) {
    const auto man = load_manifest(d.manifest);
    fallback = man.default_direction;
    for (const auto& [task, dir] : man.directions) overrides.emplace(task, dir);
    return load(man.format, man.path, man.tie_policy);
  }
  return load(d.level == "task" ? DatasetFormat::TaskLevel : DatasetFormat::InstanceLevel,
              d.input, cli_ties);
}

const std::vector<std::string>& system_names(const Dataset& d) {
  return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.system_names(); },
                    d);
}

AggregationResult run_method(const Dataset& d, Method m, TiePolicy ties) {
  return std::visit([&](const auto& x) { return aggregate(x, m, ties); }, d);
}

std::string order_line(const AggregationResult& r, const std::vector<std::string>& names) {
  const auto order = r.ranking.order();
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += r.ranking[order[i]] == r.ranking[order[i - 1]] ? " = " : " > ";
    out += names[order[i]];
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) continue;
    const auto v = parse_double(piece);
    if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
      throw CLI::ValidationError("expected a non-negative integer, got '" + piece + "'");
    }
    out.push_back(static_cast<std::size_t>(*v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) continue;
    const auto v = parse_double(piece);
    if (!v) throw CLI::ValidationError("expected a number, got '" + piece + "'");
    out.push_back(*v);
  }
  return out;
}

void emit_experiment(const ExperimentReport& report, const CommonArgs& c) {
  if (c.out.empty()) {
    std::cout << experiment_csv(report);
    return;
  }
  for (const auto& p : write_report(report, c.out, parse_formats(c.format))) {
    std::cout << "wrote " << p.string() << "\n";
  }
}

int cmd_rank(const DatasetArgs& d, const std::string& methods, const CommonArgs& c) {
  const auto ds = load_dataset(d);
  const auto& names = system_names(ds.data);
  const auto ms = parse_methods(methods);
  std::vector<AggregationResult> results;
  for (Method m : ms) results.push_back(run_method(ds.data, m, ds.tie_policy));

  for (const auto& r : results) {
    std::cout << to_string(r.method) << ": " << order_line(r, names) << "\n";
  }
  // Side-by-side table: one row per position, one column per method.
  std::size_t width = 4;
  for (const auto& n : names) width = std::max(width, n.size());
  for (Method m : ms) width = std::max(width, to_string(m).size());
  width += 2;
  auto print_row = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (const auto& cell : cells) line += cell + std::string(width - cell.size(), ' ');
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  };
  std::cout << "\n";
  std::vector<std::string> header{"rank"};
  for (Method m : ms) header.emplace_back(to_string(m));
  print_row(header);
  std::vector<std::vector<std::size_t>> orders;
  for (const auto& r : results) orders.push_back(r.ranking.order());
  for (std::size_t pos = 0; pos < names.size(); ++pos) {
    std::vector<std::string> row{std::to_string(pos + 1)};
    for (const auto& o : orders) row.push_back(names[o[pos]]);
    print_row(row);
  }

  if (!c.out.empty()) {
    const auto formats = parse_formats(c.format);
    for (const auto& r : results) {
      const std::string config = ojson{{"input", ds.source},
                                       {"level", d.level},
                                       {"tie_policy", std::string(to_string(ds.tie_policy))}}
                                     .dump();
      for (const auto& p : write_report(r, names, c.out, formats, {}, c.seed, config)) {
        std::cout << "wrote " << p.string() << "\n";
      }
    }
  }
  return 0;
}

int cmd_compare(const DatasetArgs& d, const std::string& methods, const std::string& ks_text,
                const CommonArgs& c) {
  const auto ds = load_dataset(d);
  const auto ms = parse_methods(methods);
  if (ms.size() != 2) throw CLI::ValidationError("--method needs exactly two methods");
  const auto a = run_method(ds.data, ms[0], ds.tie_policy);
  const auto b = run_method(ds.data, ms[1], ds.tie_policy);
  const auto n = system_names(ds.data).size();
  std::vector<std::size_t> ks;
  for (std::size_t k : parse_size_list(ks_text)) {
    if (k >= 1 && k <= n) ks.push_back(k);
  }
  const auto summary = run_agreement_analysis(a, b, ks);

  std::string csv = "k,top_k_agreement,last_k_agreement,tie_straddled\n";
  ojson rows = ojson::array();
  for (const auto& [k, top] : summary.top_k_agreement) {
    const double last = summary.last_k_agreement.at(k);
    const bool straddled = summary.tie_straddled.at(k);
    csv += std::to_string(k) + "," + format_double(top) + "," + format_double(last) + "," +
           (straddled ? "1" : "0") + "\n";
    rows.push_back({{"k", k},
                    {"top_k_agreement", top},
                    {"last_k_agreement", last},
                    {"tie_straddled", straddled}});
  }
  std::cout << to_string(ms[0]) << " vs " << to_string(ms[1])
            << ": kendall_tau=" << format_double(summary.full_tau) << "\n"
            << csv;
  if (!c.out.empty()) {
    const auto formats = parse_formats(c.format);
    fs::create_directories(c.out);
    if (formats.count(ReportFormat::Csv)) {
      write_text_file(fs::path(c.out) / "compare.csv", csv);
      std::cout << "wrote " << (fs::path(c.out) / "compare.csv").string() << "\n";
    }
    if (formats.count(ReportFormat::Json)) {
      const ojson j = {{"experiment", "compare"},
                       {"seed", c.seed},
                       {"version", std::string(kVersion)},
                       {"config",
                        {{"input", ds.source},
                         {"methods", {std::string(to_string(ms[0])), std::string(to_string(ms[1]))}},
                         {"tie_policy", std::string(to_string(ds.tie_policy))}}},
                       {"results", {{"kendall_tau", summary.full_tau}, {"agreement", rows}}}};
      write_text_file(fs::path(c.out) / "compare.json", j.dump(2) + "\n");
      std::cout << "wrote " << (fs::path(c.out) / "compare.json").string() << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const SyntheticConfig& cfg, const CommonArgs& c) {
  cfg.validate();
  const auto data = generate_scores(cfg, c.threads);
  const fs::path out = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(out);
  write_instance_level(data, out / "synthetic_instances.csv");
  write_text_file(out / "synthetic_config.json", to_json_string(cfg) + "\n");
  std::cout << "wrote " << (out / "synthetic_instances.csv").string() << "\n"
            << "wrote " << (out / "synthetic_config.json").string() << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Rank aggregation of systems evaluated on multiple tasks", "rankagg"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // rank
  CommonArgs rank_c;
  DatasetArgs rank_d;
  std::string rank_methods = "sigma_star";
  auto* rank = app.add_subcommand("rank", "Aggregate a dataset under one or more methods");
  add_dataset(rank, rank_d);
  rank->add_option("--method", rank_methods, "mean,sigma_star,one_level,two_level")
      ->capture_default_str();
  add_common(rank, rank_c);

  // compare
  CommonArgs cmp_c;
  DatasetArgs cmp_d;
  std::string cmp_methods = "sigma_star,mean";
  std::string cmp_ks = "1,3,5,10";
  auto* compare = app.add_subcommand("compare", "Agreement between two aggregation methods");
  add_dataset(compare, cmp_d);
  compare->add_option("--method", cmp_methods, "Exactly two methods")->capture_default_str();
  compare->add_option("--k", cmp_ks, "Cut-offs for top-K and last-K agreement")
      ->capture_default_str();
  add_common(compare, cmp_c);

  // simulate
  CommonArgs sim_c;
  SyntheticConfig sim_cfg;
  auto* simulate = app.add_subcommand("simulate", "Emit a synthetic instance-level dataset");
  simulate->add_option("--n", sim_cfg.n_systems, "Systems")->capture_default_str();
  simulate->add_option("--t", sim_cfg.n_tasks, "Tasks")->capture_default_str();
  simulate->add_option("--k", sim_cfg.n_instances, "Instances per task")->capture_default_str();
  simulate->add_option("--phi", sim_cfg.phi, "Signal strength")->capture_default_str();
  simulate->add_option("--beta", sim_cfg.beta, "Gumbel scale")->capture_default_str();
  add_common(simulate, sim_c);

  // robustness
  CommonArgs rob_c;
  ManipulationConfig rob_cfg;
  std::string rob_phis = "0.1,0.5,1", rob_counts, rob_methods = "mean,one_level,two_level";
  auto* robustness = app.add_subcommand("robustness", "Reverse-corruption manipulation suite");
  robustness->add_option("--n", rob_cfg.n_systems, "Systems")->capture_default_str();
  robustness->add_option("--t", rob_cfg.n_tasks, "Tasks")->capture_default_str();
  robustness->add_option("--k", rob_cfg.n_instances, "Instances per task")->capture_default_str();
  robustness->add_option("--phis", rob_phis, "Signal strengths")->capture_default_str();
  robustness->add_option("--corrupted", rob_counts, "Corrupted task counts (default 0..T)");
  robustness->add_option("--method", rob_methods, "Methods")->capture_default_str();
  robustness->add_option("--reps", rob_cfg.n_reps, "Replications")->capture_default_str();
  robustness->add_option("--beta", rob_cfg.beta, "Gumbel scale")->capture_default_str();
  robustness->add_flag("--corruption-scales-with-phi", rob_cfg.corruption_scales_with_phi,
                       "Corrupted location -phi*n instead of -n");
  add_common(robustness, rob_c);

  // scaling
  CommonArgs sc_c;
  ScalingConfig sc_cfg;
  std::string sc_phis = "0.05,0.3", sc_factors = "0.1,0.5,1,2,5,7,10,100";
  std::string sc_methods = "mean,sigma_star,one_level,two_level";
  bool sc_literal = false;
  auto* scaling = app.add_subcommand("scaling", "Rescale one task and measure each method");
  scaling->add_option("--n", sc_cfg.n_systems, "Systems")->capture_default_str();
  scaling->add_option("--t", sc_cfg.n_tasks, "Tasks")->capture_default_str();
  scaling->add_option("--k", sc_cfg.n_instances, "Instances per task")->capture_default_str();
  scaling->add_option("--phis", sc_phis, "Signal strengths")->capture_default_str();
  scaling->add_option("--factors", sc_factors, "Scale factors")->capture_default_str();
  scaling->add_option("--method", sc_methods, "Methods")->capture_default_str();
  scaling->add_option("--reps", sc_cfg.n_reps, "Replications")->capture_default_str();
  scaling->add_option("--beta", sc_cfg.beta, "Gumbel scale")->capture_default_str();
  scaling->add_flag("--clean-scaled-task", sc_literal,
                    "Rescale a clean task instead of a reversed one");
  add_common(scaling, sc_c);

  // subset
  CommonArgs sub_c;
  DatasetArgs sub_d;
  SubsetConfig sub_cfg;
  std::string sub_methods = "sigma_star,mean", sub_sizes;
  auto* subset = app.add_subcommand("subset", "Stability of rankings over random task subsets");
  add_dataset(subset, sub_d);
  subset->add_option("--method", sub_methods, "Methods")->capture_default_str();
  subset->add_option("--samples", sub_cfg.n_samples, "Subsets per size")->capture_default_str();
  subset->add_option("--sizes", sub_sizes, "Subset sizes (default 1..T)");
  add_common(subset, sub_c);

  // dispersion
  CommonArgs disp_c;
  DatasetArgs disp_d;
  DispersionConfig disp_cfg;
  auto* dispersion = app.add_subcommand("dispersion", "Dispersion of the per-task rankings");
  add_dataset(dispersion, disp_d);
  dispersion->add_option("--n-random", disp_cfg.n_random, "Random permutations for the baseline")
      ->capture_default_str();
  dispersion->add_option("--exact-max-n", disp_cfg.exact_max_n,
                         "Largest N for exact Kemeny and the sandwich check")
      ->capture_default_str();
  add_common(dispersion, disp_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*rank) return cmd_rank(rank_d, rank_methods, rank_c);
    if (*compare) return cmd_compare(cmp_d, cmp_methods, cmp_ks, cmp_c);
    if (*simulate) {
      sim_cfg.seed = sim_c.seed;
      return cmd_simulate(sim_cfg, sim_c);
    }
    if (*robustness) {
      rob_cfg.phis = parse_double_list(rob_phis);
      rob_cfg.corrupted_counts = parse_size_list(rob_counts);
      rob_cfg.methods = parse_methods(rob_methods);
      rob_cfg.seed = rob_c.seed;
      rob_cfg.threads = rob_c.threads;
      emit_experiment(run_manipulation_robustness(rob_cfg), rob_c);
      return 0;
    }
    if (*scaling) {
      sc_cfg.phis = parse_double_list(sc_phis);
      sc_cfg.scale_factors = parse_double_list(sc_factors);
      sc_cfg.methods = parse_methods(sc_methods);
      sc_cfg.reverse_scaled_task = !sc_literal;
      sc_cfg.seed = sc_c.seed;
      sc_cfg.threads = sc_c.threads;
      emit_experiment(run_scaling_robustness(sc_cfg), sc_c);
      return 0;
    }
    if (*subset) {
      const auto ds = load_dataset(sub_d);
      sub_cfg.methods = parse_methods(sub_methods);
      sub_cfg.subset_sizes = parse_size_list(sub_sizes);
      sub_cfg.seed = sub_c.seed;
      sub_cfg.threads = sub_c.threads;
      sub_cfg.tie_policy = ds.tie_policy;
      emit_experiment(
          std::visit([&](const auto& x) { return run_subset_robustness(x, sub_cfg); }, ds.data),
          sub_c);
      return 0;
    }
    if (*dispersion) {
      const auto ds = load_dataset(disp_d);
      disp_cfg.seed = disp_c.seed;
      disp_cfg.tie_policy = ds.tie_policy;
      const TaskScoreMatrix m = std::holds_alternative<TaskScoreMatrix>(ds.data)
                                    ? std::get<TaskScoreMatrix>(ds.data)
                                    : mean_instance_aggregate(std::get<InstanceScoreSet>(ds.data));
      const auto report = run_dispersion_analysis(m, disp_cfg);
      if (disp_c.out.empty()) {
        std::cout << dispersion_csv(report);
      } else {
        for (const auto& p : write_report(report, disp_c.out, parse_formats(disp_c.format))) {
          std::cout << "wrote " << p.string() << "\n";
        }
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace rankagg
