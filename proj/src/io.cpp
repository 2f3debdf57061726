#include "rankagg/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include "rankagg/error.hpp"

namespace rankagg {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

void write_text_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Records of a CSV file with 1-based line numbers; blank lines are skipped.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<Record> read_csv(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::vector<Record> records;
  std::size_t pos = 0, line_no = 0;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) pos = 3;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) records.push_back({line_no, split_csv_line(line)});
    pos = end + 1;
  }
  if (records.empty()) throw Error(path.string() + ": file is empty");
  return records;
}

std::string where(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

TaskScoreMatrix load_task_level(const fs::path& path) {
  const auto records = read_csv(path);
  const auto& header = records.front().fields;
  if (header.empty() || header.front() != "system") {
    throw Error(where(path, records.front().line) + "header must start with 'system'");
  }
  if (header.size() < 2) throw Error(where(path, records.front().line) + "no task columns");
  std::vector<std::string> tasks(header.begin() + 1, header.end());
  std::vector<std::string> systems;
  std::vector<double> scores;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(where(path, rec.line) + "expected " + std::to_string(header.size()) +
                  " columns, found " + std::to_string(rec.fields.size()));
    }
    const auto& name = rec.fields.front();
    if (!seen.insert(name).second) {
      throw Error(where(path, rec.line) + "duplicate system '" + name + "'");
    }
    systems.push_back(name);
    for (std::size_t c = 1; c < rec.fields.size(); ++c) {
      const auto v = parse_double(rec.fields[c]);
      if (!v || !std::isfinite(*v)) {
        throw Error(where(path, rec.line) + "non-numeric cell '" + rec.fields[c] +
                    "' (system '" + name + "', task '" + tasks[c - 1] + "', column " +
                    std::to_string(c + 1) + ")");
      }
      scores.push_back(*v);
    }
  }
  if (systems.empty()) throw Error(path.string() + ": no system rows");
  std::vector<Direction> dirs(tasks.size(), Direction::HigherBetter);
  try {
    return TaskScoreMatrix(std::move(systems), std::move(tasks), std::move(dirs),
                           std::move(scores));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_task_level(const TaskScoreMatrix& data, const fs::path& path) {
  std::string out = "system";
  for (const auto& t : data.task_names()) out += "," + csv_field(t);
  out += "\n";
  for (std::size_t n = 0; n < data.n_systems(); ++n) {
    out += csv_field(data.system_names()[n]);
    for (double v : data.row(n)) out += "," + format_double(v);
    out += "\n";
  }
  write_text_file(path, out);
}

InstanceScoreSet load_instance_level(const fs::path& path) {
  const auto records = read_csv(path);
  const auto& header = records.front().fields;
  const std::vector<std::string> expected{"system", "task", "instance", "score"};
  std::array<std::size_t, 4> col{};
  for (std::size_t e = 0; e < expected.size(); ++e) {
    const auto it = std::find(header.begin(), header.end(), expected[e]);
    if (it == header.end()) {
      throw Error(where(path, records.front().line) + "missing column '" + expected[e] +
                  "' (header must contain system,task,instance,score)");
    }
    col[e] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::string> systems;
  std::unordered_map<std::string, std::size_t> system_index;
  std::vector<std::string> tasks;
  std::unordered_map<std::string, std::size_t> task_index;
  // cells[task][instance][system] = score
  std::vector<std::map<std::string, std::map<std::size_t, double>>> cells;

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(where(path, rec.line) + "expected " + std::to_string(header.size()) +
                  " columns, found " + std::to_string(rec.fields.size()));
    }
    const auto& sys = rec.fields[col[0]];
    const auto& task = rec.fields[col[1]];
    const auto& inst = rec.fields[col[2]];
    const auto score = parse_double(rec.fields[col[3]]);
    if (!score || !std::isfinite(*score)) {
      throw Error(where(path, rec.line) + "non-numeric score '" + rec.fields[col[3]] +
                  "' (system '" + sys + "', task '" + task + "', instance '" + inst +
                  "', column " + std::to_string(col[3] + 1) + ")");
    }
    auto [sit, snew] = system_index.try_emplace(sys, systems.size());
    if (snew) systems.push_back(sys);
    auto [tit, tnew] = task_index.try_emplace(task, tasks.size());
    if (tnew) {
      tasks.push_back(task);
      cells.emplace_back();
    }
    auto& slot = cells[tit->second][inst];
    if (!slot.emplace(sit->second, *score).second) {
      throw Error(where(path, rec.line) + "duplicate score for system '" + sys + "', task '" +
                  task + "', instance '" + inst + "'");
    }
  }
  if (systems.empty()) throw Error(path.string() + ": no score rows");

  std::vector<std::string> gaps;
  std::vector<TaskInstances> out_tasks;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    TaskInstances ti;
    ti.name = tasks[t];
    for (const auto& [inst, by_system] : cells[t]) ti.instance_ids.push_back(inst);
    const std::size_t k_count = ti.instance_ids.size();
    ti.scores.assign(systems.size() * k_count, 0.0);
    std::size_t k = 0;
    for (const auto& [inst, by_system] : cells[t]) {
      for (std::size_t s = 0; s < systems.size(); ++s) {
        const auto it = by_system.find(s);
        if (it == by_system.end()) {
          if (gaps.size() < 10) {
            gaps.push_back("system '" + systems[s] + "', task '" + tasks[t] + "', instance '" +
                           inst + "'");
          } else if (gaps.size() == 10) {
            gaps.push_back("...");
          }
          continue;
        }
        ti.scores[s * k_count + k] = it->second;
      }
      ++k;
    }
    out_tasks.push_back(std::move(ti));
  }
  if (!gaps.empty()) {
    std::string msg = path.string() + ": incomplete coverage, missing scores for ";
    for (std::size_t i = 0; i < gaps.size(); ++i) msg += (i ? "; " : "") + gaps[i];
    throw Error(msg);
  }
  return InstanceScoreSet(std::move(systems), std::move(out_tasks));
}

void write_instance_level(const InstanceScoreSet& data, const fs::path& path) {
  std::string out = "system,task,instance,score\n";
  for (const auto& task : data.tasks()) {
    for (std::size_t k = 0; k < task.n_instances(); ++k) {
      for (std::size_t s = 0; s < data.n_systems(); ++s) {
        out += csv_field(data.system_names()[s]) + "," + csv_field(task.name) + "," +
               csv_field(task.instance_ids[k]) + "," + format_double(task.at(s, k)) + "\n";
      }
    }
  }
  write_text_file(path, out);
}

std::map<std::string, Direction> load_direction_sidecar(const fs::path& path) {
  std::map<std::string, Direction> out;
  try {
    const auto j = nlohmann::json::parse(read_text_file(path));
    if (!j.is_object()) throw Error(path.string() + ": expected a JSON object");
    for (const auto& [task, value] : j.items()) {
      if (!value.is_string()) {
        throw Error(path.string() + ": direction for task '" + task + "' must be a string");
      }
      out[task] = parse_direction(value.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return out;
}

namespace {

template <typename NameAt>
std::vector<Direction> resolve_directions(std::size_t n_tasks, NameAt name_at,
                                          const std::map<std::string, Direction>& overrides,
                                          Direction fallback) {
  std::vector<Direction> dirs(n_tasks, fallback);
  std::set<std::string> known;
  for (std::size_t t = 0; t < n_tasks; ++t) {
    const std::string& name = name_at(t);
    known.insert(name);
    if (const auto it = overrides.find(name); it != overrides.end()) dirs[t] = it->second;
  }
  for (const auto& [name, d] : overrides) {
    if (!known.count(name)) throw Error("direction given for unknown task '" + name + "'");
  }
  return dirs;
}

}  // namespace

void apply_directions(TaskScoreMatrix& data, const std::map<std::string, Direction>& overrides,
                      Direction fallback) {
  data.set_directions(resolve_directions(
      data.n_tasks(), [&](std::size_t t) -> const std::string& { return data.task_names()[t]; },
      overrides, fallback));
}

void apply_directions(InstanceScoreSet& data, const std::map<std::string, Direction>& overrides,
                      Direction fallback) {
  const auto dirs = resolve_directions(
      data.n_tasks(), [&](std::size_t t) -> const std::string& { return data.task(t).name; },
      overrides, fallback);
  for (std::size_t t = 0; t < dirs.size(); ++t) data.mutable_task(t).direction = dirs[t];
}

DatasetManifest load_manifest(const fs::path& path) {
  DatasetManifest m;
  try {
    const auto j = nlohmann::json::parse(read_text_file(path));
    const auto format = j.at("format").get<std::string>();
    if (format == "task_level") {
      m.format = DatasetFormat::TaskLevel;
    } else if (format == "instance_level") {
      m.format = DatasetFormat::InstanceLevel;
    } else {
      throw Error(path.string() + ": format must be task_level or instance_level");
    }
    m.path = j.at("path").get<std::string>();
    if (m.path.is_relative()) m.path = path.parent_path() / m.path;
    if (j.contains("directions")) {
      for (const auto& [task, value] : j.at("directions").items()) {
        m.directions[task] = parse_direction(value.get<std::string>());
      }
    }
    m.default_direction = parse_direction(j.value("default_direction", std::string("higher")));
    m.tie_policy = parse_tie_policy(j.value("tie_policy", std::string("fractional")));
    m.name = j.value("name", m.path.stem().string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  if (!fs::exists(m.path)) {
    throw Error(path.string() + ": referenced data file '" + m.path.string() + "' not found");
  }
  return m;
}

}  // namespace rankagg
