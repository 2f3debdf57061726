#include "rankagg/report.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rankagg/error.hpp"

namespace rankagg {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string joined(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

ojson parse_config(std::string_view config_json) {
  if (config_json.empty()) return ojson::object();
  try {
    return ojson::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid report config JSON: ") + e.what());
  }
}

void prepare_dir(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error("cannot create output directory '" + out_dir.string() + "'");
  }
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

}  // namespace

std::set<ReportFormat> parse_formats(std::string_view comma_separated) {
  std::set<ReportFormat> out;
  for (const auto& piece : split(comma_separated, ',')) {
    if (piece.empty()) continue;
    if (piece == "csv") {
      out.insert(ReportFormat::Csv);
    } else if (piece == "json") {
      out.insert(ReportFormat::Json);
    } else if (piece == "svg") {
      out.insert(ReportFormat::Svg);
    } else {
      throw Error("unknown report format '" + piece + "' (expected csv|json|svg)");
    }
  }
  return out;
}

std::string experiment_csv(const ExperimentReport& report) {
  std::vector<std::string> names;
  for (const auto& a : report.axes) names.push_back(a.name);
  const std::string param_name = joined(names, ';');
  std::string out = "experiment,param_name,param_value,method,mean,std,n_reps\n";
  for (const auto& c : report.cells) {
    std::vector<std::string> values;
    for (double v : c.params) values.push_back(format_double(v));
    out += report.experiment + "," + param_name + "," + joined(values, ';') + "," +
           std::string(to_string(c.method)) + "," + format_double(c.mean) + "," +
           format_double(c.std) + "," + std::to_string(c.n) + "\n";
  }
  return out;
}

ExperimentReport parse_experiment_csv(std::string_view text) {
  ExperimentReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (!header_seen) {
      if (line != "experiment,param_name,param_value,method,mean,std,n_reps") {
        throw Error("experiment CSV: unexpected header on line " + std::to_string(line_no));
      }
      header_seen = true;
      continue;
    }
    if (f.size() != 7) {
      throw Error("experiment CSV line " + std::to_string(line_no) + ": expected 7 columns");
    }
    const auto names = split(f[1], ';');
    const auto values = split(f[2], ';');
    if (names.size() != values.size()) {
      throw Error("experiment CSV line " + std::to_string(line_no) +
                  ": param_name and param_value disagree in length");
    }
    if (report.axes.empty()) {
      report.experiment = f[0];
      for (const auto& n : names) report.axes.push_back({n, {}});
    }
    Cell c;
    for (std::size_t a = 0; a < values.size(); ++a) {
      const auto v = parse_double(values[a]);
      if (!v) throw Error("experiment CSV line " + std::to_string(line_no) + ": bad parameter");
      c.params.push_back(*v);
      auto& axis = report.axes[a].values;
      if (std::find(axis.begin(), axis.end(), *v) == axis.end()) axis.push_back(*v);
    }
    c.method = parse_method(f[3]);
    const auto mean = parse_double(f[4]);
    const auto sd = parse_double(f[5]);
    const auto n = parse_double(f[6]);
    if (!mean || !sd || !n) {
      throw Error("experiment CSV line " + std::to_string(line_no) + ": bad numeric field");
    }
    c.mean = *mean;
    c.std = *sd;
    c.n = static_cast<std::size_t>(*n);
    report.n_replications = c.n;
    if (std::find(report.methods.begin(), report.methods.end(), c.method) ==
        report.methods.end()) {
      report.methods.push_back(c.method);
    }
    report.cells.push_back(std::move(c));
  }
  if (!header_seen) throw Error("experiment CSV: missing header");
  return report;
}

std::string experiment_json(const ExperimentReport& report) {
  ojson axes = ojson::array();
  for (const auto& a : report.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  ojson methods = ojson::array();
  for (Method m : report.methods) methods.push_back(std::string(to_string(m)));
  ojson cells = ojson::array();
  for (const auto& c : report.cells) {
    ojson params = ojson::object();
    for (std::size_t a = 0; a < c.params.size() && a < report.axes.size(); ++a) {
      params[report.axes[a].name] = c.params[a];
    }
    cells.push_back({{"params", params},
                     {"method", std::string(to_string(c.method))},
                     {"mean", c.mean},
                     {"std", c.std},
                     {"n", c.n}});
  }
  const ojson j = {
      {"experiment", report.experiment},
      {"seed", report.seed},
      {"version", std::string(kVersion)},
      {"config", parse_config(report.config_json)},
      {"results",
       {{"axes", axes},
        {"methods", methods},
        {"n_replications", report.n_replications},
        {"cells", cells}}},
  };
  return j.dump(2) + "\n";
}

std::string experiment_svg(const ExperimentReport& report) {
  constexpr double width = 720, height = 440, left = 70, right = 200, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  if (report.axes.empty()) throw Error("cannot chart an experiment without axes");
  const auto& x_axis = report.axes.back();

  // Series keyed by method and the outer grid values.
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x index, mean)
  };
  std::vector<Series> series;
  double y_min = 0.0, y_max = 1.0;
  for (const auto& c : report.cells) {
    std::string label(to_string(c.method));
    for (std::size_t a = 0; a + 1 < c.params.size(); ++a) {
      label += " " + report.axes[a].name + "=" + format_double(c.params[a]);
    }
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.label == label; });
    if (it == series.end()) {
      series.push_back({label, {}});
      it = series.end() - 1;
    }
    const auto xi = static_cast<double>(
        std::find(x_axis.values.begin(), x_axis.values.end(), c.params.back()) -
        x_axis.values.begin());
    it->points.emplace_back(xi, c.mean);
    y_min = std::min(y_min, c.mean);
    y_max = std::max(y_max, c.mean);
  }
  const double x_den = std::max<double>(1.0, static_cast<double>(x_axis.values.size()) - 1.0);
  const auto px = [&](double xi) { return left + plot_w * xi / x_den; };
  const auto py = [&](double y) { return top + plot_h * (1.0 - (y - y_min) / (y_max - y_min)); };

  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                            "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << xml_escape(report.experiment)
      << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = y_min + (y_max - y_min) * i / 4.0;
    svg << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
        << fixed(y, 2) << "</text>\n";
  }
  for (std::size_t i = 0; i < x_axis.values.size(); ++i) {
    svg << "<text x=\"" << px(static_cast<double>(i)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << format_double(x_axis.values[i]) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 18
      << "\" text-anchor=\"middle\">" << xml_escape(x_axis.name) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [xi, y] : series[s].points) svg << px(xi) << "," << py(y) << " ";
    svg << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + plot_w + 36 << "\" y=\"" << ly + 4 << "\">"
        << xml_escape(series[s].label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string aggregation_csv(const AggregationResult& result,
                            std::span<const std::string> system_names) {
  if (system_names.size() != result.ranking.size()) {
    throw Error("system names do not match the ranking size");
  }
  std::string out = "system,rank,value\n";
  for (std::size_t i : result.ranking.order()) {
    out += system_names[i] + "," + format_double(result.ranking[i]) + "," +
           format_double(result.per_system_value[i]) + "\n";
  }
  return out;
}

std::string aggregation_json(const AggregationResult& result,
                             std::span<const std::string> system_names,
                             std::optional<std::uint64_t> seed, std::string_view config_json) {
  if (system_names.size() != result.ranking.size()) {
    throw Error("system names do not match the ranking size");
  }
  ojson ranks = ojson::array();
  for (double r : result.ranking.ranks()) {
    if (r == std::floor(r)) {
      ranks.push_back(static_cast<long long>(r));
    } else {
      ranks.push_back(r);
    }
  }
  ojson order = ojson::array();
  for (std::size_t i : result.ranking.order()) order.push_back(system_names[i]);
  ojson ties = ojson::array();
  for (const auto& g : result.tie_groups) {
    ojson group = ojson::array();
    for (std::size_t i : g) group.push_back(system_names[i]);
    ties.push_back(group);
  }
  const ojson j = {
      {"method", std::string(to_string(result.method))},
      {"seed", seed ? ojson(*seed) : ojson(nullptr)},
      {"version", std::string(kVersion)},
      {"config", parse_config(config_json)},
      {"results",
       {{"systems", std::vector<std::string>(system_names.begin(), system_names.end())},
        {"ranking", ranks},
        {"per_system_value", result.per_system_value},
        {"order", order},
        {"tie_groups", ties}}},
  };
  return j.dump(2) + "\n";
}

std::string dispersion_csv(const DispersionReport& report) {
  std::string out = "quantity,value\n";
  for (const auto& [label, v] : report.performance) {
    out += "performance_" + label + "," + format_double(v) + "\n";
  }
  out += "pairwise_mean," + format_double(report.pairwise_mean) + "\n";
  out += "random_baseline_mean," + format_double(report.random_baseline_mean) + "\n";
  out += "random_baseline_std," + format_double(report.random_baseline_std) + "\n";
  out += "n_random," + std::to_string(report.n_random) + "\n";
  if (report.sandwich) {
    out += "sandwich_lower," + format_double(report.sandwich->lower) + "\n";
    out += "sandwich_value," + format_double(report.sandwich->value) + "\n";
    out += "sandwich_upper," + format_double(report.sandwich->upper) + "\n";
    out += std::string("sandwich_ok,") + (report.sandwich->ok ? "1" : "0") + "\n";
  }
  return out;
}

std::string dispersion_json(const DispersionReport& report) {
  ojson perf = ojson::object();
  for (const auto& [label, v] : report.performance) perf[label] = v;
  ojson sandwich = nullptr;
  if (report.sandwich) {
    sandwich = {{"lower", report.sandwich->lower},
                {"value", report.sandwich->value},
                {"upper", report.sandwich->upper},
                {"ok", report.sandwich->ok}};
  }
  const ojson j = {
      {"experiment", "dispersion"},
      {"seed", report.seed},
      {"version", std::string(kVersion)},
      {"config", {{"n_random", report.n_random}}},
      {"results",
       {{"performance", perf},
        {"pairwise_mean", report.pairwise_mean},
        {"random_baseline_mean", report.random_baseline_mean},
        {"random_baseline_std", report.random_baseline_std},
        {"n_random", report.n_random},
        {"sandwich_ok", report.sandwich ? ojson(report.sandwich->ok) : ojson(nullptr)},
        {"sandwich", sandwich}}},
  };
  return j.dump(2) + "\n";
}

std::vector<fs::path> write_report(const ExperimentReport& report, const fs::path& out_dir,
                                   const std::set<ReportFormat>& formats, std::string_view stem) {
  std::vector<fs::path> written;
  if (formats.empty()) return written;
  prepare_dir(out_dir);
  const std::string base = stem.empty() ? report.experiment : std::string(stem);
  for (ReportFormat f : formats) {
    switch (f) {
      case ReportFormat::Csv:
        written.push_back(out_dir / (base + ".csv"));
        write_text_file(written.back(), experiment_csv(report));
        break;
      case ReportFormat::Json:
        written.push_back(out_dir / (base + ".json"));
        write_text_file(written.back(), experiment_json(report));
        break;
      case ReportFormat::Svg:
        written.push_back(out_dir / (base + ".svg"));
        write_text_file(written.back(), experiment_svg(report));
        break;
    }
  }
  return written;
}

std::vector<fs::path> write_report(const AggregationResult& result,
                                   std::span<const std::string> system_names,
                                   const fs::path& out_dir, const std::set<ReportFormat>& formats,
                                   std::string_view stem, std::optional<std::uint64_t> seed,
                                   std::string_view config_json) {
  std::vector<fs::path> written;
  if (formats.empty()) return written;
  prepare_dir(out_dir);
  const std::string base =
      stem.empty() ? "rank_" + std::string(to_string(result.method)) : std::string(stem);
  for (ReportFormat f : formats) {
    if (f == ReportFormat::Csv) {
      written.push_back(out_dir / (base + ".csv"));
      write_text_file(written.back(), aggregation_csv(result, system_names));
    } else if (f == ReportFormat::Json) {
      written.push_back(out_dir / (base + ".json"));
      write_text_file(written.back(), aggregation_json(result, system_names, seed, config_json));
    }
  }
  return written;
}

std::vector<fs::path> write_report(const DispersionReport& report, const fs::path& out_dir,
                                   const std::set<ReportFormat>& formats, std::string_view stem) {
  std::vector<fs::path> written;
  if (formats.empty()) return written;
  prepare_dir(out_dir);
  const std::string base(stem);
  for (ReportFormat f : formats) {
    if (f == ReportFormat::Csv) {
      written.push_back(out_dir / (base + ".csv"));
      write_text_file(written.back(), dispersion_csv(report));
    } else if (f == ReportFormat::Json) {
      written.push_back(out_dir / (base + ".json"));
      write_text_file(written.back(), dispersion_json(report));
    }
  }
  return written;
}

}  // namespace rankagg
