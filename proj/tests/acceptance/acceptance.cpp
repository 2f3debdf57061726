// Acceptance checks. Run with no arguments for every criterion, or pass
// criterion numbers. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "rankagg/aggregators.hpp"
#include "rankagg/dispersion.hpp"
#include "rankagg/experiments.hpp"
#include "rankagg/io.hpp"
#include "rankagg/kemeny.hpp"
#include "rankagg/synthetic.hpp"

using namespace rankagg;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

// 1. Three-system golden values.
Outcome paradox() {
  const auto t0 = Clock::now();
  auto m = load_task_level(fs::path(RANKAGG_TEST_DATA) / "paradox.csv");
  apply_directions(m, {}, Direction::LowerBetter);
  const auto mean = mean_task_aggregate(m);
  const auto star = sigma_star(m, TiePolicy::Fractional);
  const auto ab = pairwise_compare(m.row(0), m.row(1), Direction::LowerBetter);
  const auto cb = pairwise_compare(m.row(2), m.row(1), Direction::LowerBetter);
  const auto ac = pairwise_compare(m.row(0), m.row(2), Direction::LowerBetter);
  const double ms = seconds_since(t0) * 1e3;

  Outcome o;
  o.pass = mean.ranking == Ranking({1, 2, 3}) && star.ranking == Ranking({3, 2, 1}) &&
           star.per_system_value == std::vector<double>{13, 12, 11} &&
           ab.verdict == Verdict::SecondBetter && ab.wins_a == 2 && ab.wins_b == 4 &&
           cb.verdict == Verdict::FirstBetter && ac.verdict == Verdict::Tie && ms < 1.0;
  o.detail = "mean A>B>C, pairwise B>A C>B A=C, sigma_star C>B>A sums (" +
             fmt(star.per_system_value[0], 0) + "," + fmt(star.per_system_value[1], 0) + "," +
             fmt(star.per_system_value[2], 0) + "), " + fmt(ms) + " ms";
  return o;
}

// 2. Kemeny solvers against full enumeration.
Outcome kemeny_oracles() {
  const auto t0 = Clock::now();
  std::size_t instances = 0, failures = 0;
  double worst_ratio = 1.0;
  auto check = [&](const std::vector<Ranking>& rs) {
    ++instances;
    const auto want = oracle::kemeny_enumerate(oracle::raw(rs));
    const auto bf = kemeny_brute_force(rs);
    const auto bb = kemeny_branch_bound(rs);
    const double ratio = borda_approx_ratio(rs);
    worst_ratio = std::max(worst_ratio, ratio);
    if (bf.objective != want.cost || bf.consensus.ranks() != want.first ||
        bf.co_optima_count != want.count || bb.objective != want.cost ||
        kemeny_objective(bb.consensus, rs) != want.cost || ratio > 5.0) {
      ++failures;
    }
  };

  // Every ordered tuple of T permutations for small (N, T).
  const std::vector<std::pair<std::size_t, std::size_t>> exhaustive{
      {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {5, 1}, {6, 1}};
  for (const auto& [n, t] : exhaustive) {
    std::vector<Ranking> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(Ranking::from_permutation(p));
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::size_t> idx(t, 0);
    while (true) {
      std::vector<Ranking> rs;
      for (std::size_t i : idx) rs.push_back(perms[i]);
      check(rs);
      std::size_t d = 0;
      while (d < t && ++idx[d] == perms.size()) idx[d++] = 0;
      if (d == t) break;
    }
  }
  // N = 5, 6 with T = 2: the first input fixed to the identity covers every
  // instance up to relabelling.
  for (std::size_t n : {5u, 6u}) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do check({Ranking::identity(n), Ranking::from_permutation(p)});
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t t = 1 + gen() % 9;
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < t; ++i) rs.push_back(oracle::random_permutation(n, gen));
    check(rs);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && secs < 60.0;
  o.detail = std::to_string(instances) + " instances, " + std::to_string(failures) +
             " mismatches, worst Borda ratio " + fmt(worst_ratio) + ", " + fmt(secs, 1) + " s";
  return o;
}

// 3. Scale invariance of rank-based methods and the mean's sensitivity.
Outcome scaling() {
  SyntheticConfig g;
  g.phi = 0.05;
  std::size_t checks = 0, changed = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    g.seed = seed;
    const auto data = generate_scores(g);
    std::vector<Ranking> base;
    for (Method m : {Method::SigmaStar, Method::OneLevel, Method::TwoLevel}) {
      base.push_back(aggregate(data, m, TiePolicy::Fractional).ranking);
    }
    for (std::size_t t = 0; t < data.n_tasks(); ++t) {
      for (double x : {0.1, 2.0, 7.0, 100.0}) {
        const auto scaled = corrupt_scale(data, {CorruptionKind::Scale, {t}, x});
        std::size_t i = 0;
        for (Method m : {Method::SigmaStar, Method::OneLevel, Method::TwoLevel}) {
          ++checks;
          if (aggregate(scaled, m, TiePolicy::Fractional).ranking != base[i++]) ++changed;
        }
      }
    }
  }

  ScalingConfig cfg;
  cfg.phis = {0.05};
  cfg.scale_factors = {1.0, 2.0};
  cfg.seed = 3;
  const double at2[] = {0.05, 2.0};
  const double at1[] = {0.05, 1.0};
  const auto rep = run_scaling_robustness(cfg);
  const double err = rep.cell(at2, Method::Mean).mean;
  const double err1 = rep.cell(at1, Method::Mean).mean;
  cfg.reverse_scaled_task = false;
  const double literal = run_scaling_robustness(cfg).cell(at2, Method::Mean).mean;

  Outcome o;
  o.pass = changed == 0 && err >= 0.75;
  o.detail = std::to_string(checks) + " rescalings, " + std::to_string(changed) +
             " rank-based outputs changed; mean error at phi=0.05 x=2 is " + fmt(err) +
             " (x=1: " + fmt(err1) + "; rescaled clean task instead: " + fmt(literal) + ")";
  return o;
}

// 4. Manipulation robustness thresholds.
Outcome manipulation() {
  const auto t0 = Clock::now();
  ManipulationConfig cfg;
  cfg.seed = 4;
  cfg.threads = 0;
  const auto rep = run_manipulation_robustness(cfg);
  const double secs = seconds_since(t0);
  // Reference counts per phi for mean, one-level, two-level.
  const std::map<double, std::array<int, 3>> reference{
      {0.1, {2, 5, 10}}, {0.5, {3, 7, 11}}, {1.0, {5, 10, 11}}};
  Outcome o;
  o.pass = secs < 600.0;
  std::string detail;
  for (double phi : cfg.phis) {
    std::array<int, 3> c{};
    int i = 0;
    for (Method m : {Method::Mean, Method::OneLevel, Method::TwoLevel}) {
      const auto v = minimal_corruption_above(rep, phi, m, 0.75);
      c[i++] = v ? static_cast<int>(*v) : 99;
    }
    const bool ordered = c[0] < c[1] && c[1] < c[2];
    bool close = true;
    for (int k = 0; k < 3; ++k) close = close && std::abs(c[k] - reference.at(phi)[k]) <= 2;
    o.pass = o.pass && ordered && close;
    detail += "phi=" + fmt(phi, 1) + ": " + std::to_string(c[0]) + "/" + std::to_string(c[1]) +
              "/" + std::to_string(c[2]) + " vs " + std::to_string(reference.at(phi)[0]) + "/" +
              std::to_string(reference.at(phi)[1]) + "/" + std::to_string(reference.at(phi)[2]) +
              (ordered ? "" : " unordered") + (close ? "; " : " off>2; ");
  }
  o.detail = detail + fmt(secs, 1) + " s";
  return o;
}

// 5. Sandwich bounds on the exact Kemeny objective.
Outcome sandwich() {
  std::mt19937_64 gen(5);
  std::size_t violations = 0, oracle_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t t = 2 + gen() % 8;
    std::vector<Ranking> rs;
    for (std::size_t i = 0; i < t; ++i) rs.push_back(oracle::random_permutation(n, gen));
    const auto s = sandwich_check(rs);
    if (!s.ok) ++violations;
    // Independent recomputation of all three quantities.
    const auto raw = oracle::raw(rs);
    double pair_sum = 0;
    for (std::size_t a = 0; a < t; ++a) {
      for (std::size_t b = a + 1; b < t; ++b) {
        pair_sum += static_cast<double>(oracle::kendall_distance(raw[a], raw[b]));
      }
    }
    const double upper = 2.0 * pair_sum / static_cast<double>(t * (t - 1));
    const double value = oracle::kemeny_enumerate(raw).cost / static_cast<double>(t);
    if (std::abs(upper - s.upper) > 1e-9 || std::abs(value - s.value) > 1e-9) ++oracle_mismatch;
    if (!(0.5 * upper <= value + 1e-12 && value <= upper + 1e-12)) ++violations;
  }
  Outcome o;
  o.pass = violations == 0 && oracle_mismatch == 0;
  o.detail = "500 instances, " + std::to_string(violations) + " violations, " +
             std::to_string(oracle_mismatch) + " oracle mismatches";
  return o;
}

TaskScoreMatrix synthetic_task_matrix(std::size_t n, std::size_t t, std::size_t k, double phi,
                                      std::uint64_t seed) {
  SyntheticConfig g;
  g.n_systems = n;
  g.n_tasks = t;
  g.n_instances = k;
  g.phi = phi;
  g.seed = seed;
  return mean_instance_aggregate(generate_scores(g));
}

// 6. Dispersion ordering on synthetic task matrices.
Outcome dispersion_ordering() {
  struct Tally {
    int kemeny_le_star = 0, star_lt_random = 0, star_le_mean = 0;
  };
  auto tally = [](std::size_t k) {
    Tally c;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto m = synthetic_task_matrix(10, 9, k, 1.0, 600 + seed);
      const auto d = run_dispersion_analysis(m, {TiePolicy::Fractional, 100, seed, 15});
      const double star = d.performance.at("sigma_star");
      c.kemeny_le_star += d.performance.at("kemeny") <= star;
      c.star_lt_random += star < d.random_baseline_mean;
      c.star_le_mean += star <= d.performance.at("mean");
    }
    return c;
  };
  const auto c = tally(20);
  const auto c1 = tally(1);
  Outcome o;
  o.pass = c.kemeny_le_star == 100 && c.star_lt_random == 100 && c.star_le_mean >= 90;
  o.detail = "kemeny<=sigma_star " + std::to_string(c.kemeny_le_star) + "/100, sigma_star<random " +
             std::to_string(c.star_lt_random) + "/100, sigma_star<=mean " +
             std::to_string(c.star_le_mean) + "/100 (single-draw task scores: " +
             std::to_string(c1.kemeny_le_star) + "/" + std::to_string(c1.star_lt_random) + "/" +
             std::to_string(c1.star_le_mean) + ")";
  return o;
}

// 7. Subset robustness curves.
Outcome subset_shape() {
  SubsetConfig cfg;
  cfg.subset_sizes = {2, 3, 5, 7, 8, 10};  // fractions 0.25, 0.5, 0.75 rounded both ways, and 1
  cfg.seed = 7;
  auto curves = [&](const TaskScoreMatrix& m) { return run_subset_robustness(m, cfg); };
  auto describe = [&](const ExperimentReport& rep, bool& above, bool& full_one) {
    std::string s;
    above = true;
    for (double size : {2.0, 3.0, 5.0, 7.0, 8.0}) {
      const double p[] = {size};
      const double star = rep.cell(p, Method::SigmaStar).mean;
      const double mean = rep.cell(p, Method::Mean).mean;
      above = above && star >= mean;
      s += "t=" + fmt(size, 0) + " " + fmt(star) + "/" + fmt(mean) + " ";
    }
    const double full[] = {10.0};
    full_one = rep.cell(full, Method::SigmaStar).mean == 1.0 &&
               rep.cell(full, Method::Mean).mean == 1.0;
    return s;
  };
  bool above = false, full_one = false, above1 = false, full1 = false;
  const auto main = describe(curves(synthetic_task_matrix(20, 10, 20, 0.5, 70)), above, full_one);
  const auto k1 = describe(curves(synthetic_task_matrix(20, 10, 1, 0.5, 70)), above1, full1);

  // Information only: the same data with task scores on unequal scales.
  auto hetero = synthetic_task_matrix(20, 10, 20, 0.5, 70);
  for (std::size_t t = 0; t < hetero.n_tasks(); ++t) {
    hetero = hetero.with_scaled_task(t, std::pow(10.0, static_cast<double>(t % 4)));
  }
  bool above_h = false, full_h = false;
  const auto h = describe(curves(hetero), above_h, full_h);

  Outcome o;
  o.pass = above && full_one;
  o.detail = "tau sigma_star/mean: " + main + (full_one ? "full=1" : "full!=1") +
             " | single-draw task scores: " + k1 + (above1 ? "above" : "below") +
             " | unequal task scales (info): " + h + (above_h ? "above" : "below");
  return o;
}

// 8. Two-system one-level Borda versus pairwise counting.
Outcome pairwise_coincidence() {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> val(0, 4);
  std::size_t mismatches = 0, ties_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + gen() % 12;
    const Direction dir = gen() % 2 ? Direction::HigherBetter : Direction::LowerBetter;
    TaskInstances t;
    t.name = "t";
    t.direction = dir;
    for (std::size_t i = 0; i < k; ++i) t.instance_ids.push_back("i" + std::to_string(i));
    t.scores.resize(2 * k);
    for (auto& v : t.scores) v = val(gen);
    const InstanceScoreSet data({"a", "b"}, {t});
    const std::vector<double> a(t.scores.begin(), t.scores.begin() + static_cast<long>(k));
    const std::vector<double> b(t.scores.begin() + static_cast<long>(k), t.scores.end());
    for (auto [mode, ties] : {std::pair{PairwiseTieMode::CreditFirst, TiePolicy::StableIndex},
                              std::pair{PairwiseTieMode::Split, TiePolicy::Fractional}}) {
      const auto borda_result = sigma_one_level(data, ties);
      const Verdict borda_verdict = !borda_result.tie_groups.empty() ? Verdict::Tie
                                    : borda_result.ranking[0] == 1.0  ? Verdict::FirstBetter
                                                                      : Verdict::SecondBetter;
      const auto pw = pairwise_compare(a, b, dir, mode);
      ties_seen += pw.verdict == Verdict::Tie;
      mismatches += pw.verdict != borda_verdict;
    }
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = "1000 instance sets x 2 tie modes, " + std::to_string(mismatches) + " mismatches (" +
             std::to_string(ties_seen) + " tied verdicts)";
  return o;
}

// 9. Kendall distance and tau.
Outcome kendall() {
  std::size_t pairs = 0, mismatches = 0, tau_bad = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<double> p(n);
    std::iota(p.begin(), p.end(), 1.0);
    std::vector<std::vector<double>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : perms) {
      const Ranking ra(a);
      if (n >= 2) {
        tau_bad += kendall_tau(ra, ra) != 1.0;
        tau_bad += kendall_tau(ra, ra.reversed()) != -1.0;
      }
      for (const auto& b : perms) {
        ++pairs;
        const Ranking rb(b);
        mismatches += kendall_distance(ra, rb) != oracle::kendall_distance(a, b);
        if (n >= 2) {
          const double tau = kendall_tau(ra, rb);
          tau_bad += tau < -1.0 || tau > 1.0;
        }
      }
    }
  }
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = oracle::random_permutation(64, gen);
    const auto b = oracle::random_permutation(64, gen);
    ++pairs;
    mismatches += kendall_distance(a, b) != oracle::kendall_distance(a.ranks(), b.ranks());
    const double tau = kendall_tau(a, b);
    tau_bad += tau < -1.0 || tau > 1.0;
    tau_bad += kendall_tau(a, a) != 1.0 || kendall_tau(a, a.reversed()) != -1.0;
  }
  Outcome o;
  o.pass = mismatches == 0 && tau_bad == 0;
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) +
             " distance mismatches, " + std::to_string(tau_bad) + " tau violations";
  return o;
}

// 10. Byte-identical CLI output across runs and thread counts.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "rankagg_acceptance_determinism";
  fs::remove_all(root);
  const std::string cli = RANKAGG_CLI_PATH;
  const std::string data = (root / "data" / "synthetic_instances.csv").string();
  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "simulate --n 20 --t 20 --k 20 --phi 1.0 --seed 7"},
      {"robustness", "robustness --phis 0.1,1 --reps 10 --seed 11 --format csv,json,svg"},
      {"subset", "subset --input " + data +
                     " --level instance --method sigma_star,mean,two_level --samples 100 --seed 3"
                     " --format csv,json,svg"},
  };
  if (std::system((cli + " simulate --n 12 --t 8 --k 5 --phi 0.5 --seed 1 --out " +
                   (root / "data").string() + " > /dev/null")
                      .c_str()) != 0) {
    return {false, "could not create subset input"};
  }
  std::size_t files = 0, differing = 0, failed_runs = 0;
  for (const auto& [name, args] : commands) {
    std::vector<fs::path> dirs;
    for (const char* variant : {"a", "b", "threads"}) {
      const auto dir = root / name / variant;
      const std::string threads = std::string(variant) == "threads" ? "8" : "1";
      const std::string cmd = cli + " " + args + " --threads " + threads + " --out " +
                              dir.string() + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) ++failed_runs;
      dirs.push_back(dir);
    }
    std::vector<fs::path> produced;
    for (const auto& e : fs::directory_iterator(dirs[0])) produced.push_back(e.path().filename());
    for (const auto& f : produced) {
      ++files;
      const auto ref = read_text_file(dirs[0] / f);
      for (std::size_t i = 1; i < dirs.size(); ++i) {
        if (!fs::exists(dirs[i] / f) || read_text_file(dirs[i] / f) != ref) ++differing;
      }
    }
  }
  fs::remove_all(root);
  Outcome o;
  o.pass = failed_runs == 0 && differing == 0 && files > 0;
  o.detail = std::to_string(files) + " output files x 3 runs (1, 1, 8 threads), " +
             std::to_string(differing) + " differ, " + std::to_string(failed_runs) +
             " failed runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"three-system golden values", paradox},
      {"kemeny oracle suite", kemeny_oracles},
      {"scaling invariance", scaling},
      {"manipulation robustness ordering", manipulation},
      {"dispersion sandwich", sandwich},
      {"dispersion ordering", dispersion_ordering},
      {"subset robustness shape", subset_shape},
      {"pairwise/borda coincidence", pairwise_coincidence},
      {"kendall metric correctness", kendall},
      {"determinism", determinism},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(c));
  }
  if (selected.empty()) {
    for (std::size_t c = 1; c <= criteria.size(); ++c) selected.push_back(c);
  }
  bool all = true;
  for (std::size_t c : selected) {
    Outcome o;
    try {
      o = criteria[c - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c << " ("
              << criteria[c - 1].first << "): " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
