// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrc {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view value, int line) {
  std::string text(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + text + "'");
  }
  if (used != text.size()) fail(line, "trailing characters after number in '" + text + "'");
  if (!std::isfinite(out)) fail(line, "number '" + text + "' is not finite");
  return out;
}

long parse_long(std::string_view value, int line) {
  std::string text(value);
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(text, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + text + "'");
  }
  if (used != text.size()) fail(line, "trailing characters after integer in '" + text + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view value, int line) {
  std::string text(value);
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(text, &used);
  } catch (const std::exception&) {
    fail(line, "expected an unsigned integer, got '" + text + "'");
  }
  if (used != text.size() || (!text.empty() && text[0] == '-'))
    fail(line, "expected an unsigned integer, got '" + text + "'");
  return out;
}

bool parse_bool(std::string_view value, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(line, "expected true or false, got '" + std::string(value) + "'");
}

std::vector<double> parse_double_list(std::string_view value, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string_view item =
        comma == std::string_view::npos ? value.substr(start) : value.substr(start, comma - start);
    item = trim(item);
    if (item.empty()) fail(line, "empty element in list");
    out.push_back(parse_double(item, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void require_integral_multiple(double numerator, double step, const char* label, int line) {
  double ratio = numerator / step;
  if (std::abs(ratio - std::llround(ratio)) > 1e-9)
    fail(line, std::string(label) + " must be an integer multiple of task.h");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kMemory: return "memory";
    case TaskKind::kNarma10: return "narma10";
    case TaskKind::kMackeyGlass: return "mackey_glass";
  }
  throw std::invalid_argument("unknown task kind");
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  cfg.reflectivities.clear();
  cfg.squeeze_strengths.clear();
  cfg.noise_variances.clear();

  bool task_set = false;
  bool slope_set = false;
  std::set<std::string> seen;

  int line_no = 0;
  std::size_t pos = 0;
  // Remember the line of each Mackey-Glass grid key so alignment errors can
  // point at the assignment that broke them.
  int tau_line = 0, t_r_line = 0, h_line = 0, transient_line = 0;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key before '='");
    if (value.empty()) fail(line_no, "missing value for key '" + key + "'");
    if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

    if (key == "task") {
      if (value == "memory") cfg.task = TaskKind::kMemory;
      else if (value == "narma10") cfg.task = TaskKind::kNarma10;
      else if (value == "mackey_glass") cfg.task = TaskKind::kMackeyGlass;
      else fail(line_no, "unknown task '" + std::string(value) +
                             "' (expected memory, narma10, or mackey_glass)");
      task_set = true;
    } else if (key == "N") {
      long n = parse_long(value, line_no);
      if (n < 1) fail(line_no, "N must be at least 1");
      cfg.mode_count = static_cast<int>(n);
    } else if (key == "R") {
      cfg.reflectivities = parse_double_list(value, line_no);
      for (double v : cfg.reflectivities)
        if (v < 0.0 || v > 1.0) fail(line_no, "R values must lie in [0, 1]");
    } else if (key == "r") {
      cfg.squeeze_strengths = parse_double_list(value, line_no);
      for (double v : cfg.squeeze_strengths)
        if (v < 0.0) fail(line_no, "r values must be nonnegative");
    } else if (key == "sigma2_noise") {
      cfg.noise_variances = parse_double_list(value, line_no);
      for (double v : cfg.noise_variances)
        if (v < 0.0) fail(line_no, "sigma2_noise values must be nonnegative");
    } else if (key == "r_input") {
      cfg.input_squeeze = parse_double(value, line_no);
      if (cfg.input_squeeze < 0.0) fail(line_no, "r_input must be nonnegative");
    } else if (key == "m") {
      cfg.encoding_slope = parse_double(value, line_no);
      slope_set = true;
    } else if (key == "washout") {
      cfg.washout = parse_long(value, line_no);
      if (cfg.washout < 0) fail(line_no, "washout must be nonnegative");
    } else if (key == "train_len") {
      cfg.train_len = parse_long(value, line_no);
      if (cfg.train_len < 1) fail(line_no, "train_len must be at least 1");
    } else if (key == "test_len") {
      cfg.test_len = parse_long(value, line_no);
      if (cfg.test_len < 1) fail(line_no, "test_len must be at least 1");
    } else if (key == "n_realizations") {
      cfg.n_realizations = parse_long(value, line_no);
      if (cfg.n_realizations < 1) fail(line_no, "n_realizations must be at least 1");
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, line_no);
    } else if (key == "ridge") {
      cfg.ridge = parse_double(value, line_no);
      if (cfg.ridge < 0.0) fail(line_no, "ridge must be nonnegative");
    } else if (key == "capacity_on_train") {
      cfg.capacity_on_train = parse_bool(value, line_no);
    } else if (key == "validate_states") {
      cfg.validate_states = parse_bool(value, line_no);
    } else if (key == "spectral_max_delay") {
      long d = parse_long(value, line_no);
      if (d < 1) fail(line_no, "spectral_max_delay must be at least 1");
      cfg.spectral_max_delay = static_cast<int>(d);
    } else if (key == "task.max_delay") {
      long d = parse_long(value, line_no);
      if (d < 1) fail(line_no, "task.max_delay must be at least 1");
      cfg.memory.max_delay = static_cast<int>(d);
    } else if (key == "task.tau") {
      cfg.mackey_glass.tau = parse_double(value, line_no);
      if (cfg.mackey_glass.tau <= 0.0) fail(line_no, "task.tau must be positive");
      tau_line = line_no;
    } else if (key == "task.t_r") {
      cfg.mackey_glass.sample_period = parse_double(value, line_no);
      if (cfg.mackey_glass.sample_period <= 0.0) fail(line_no, "task.t_r must be positive");
      t_r_line = line_no;
    } else if (key == "task.h") {
      cfg.mackey_glass.step = parse_double(value, line_no);
      if (cfg.mackey_glass.step <= 0.0 || cfg.mackey_glass.step > 0.1)
        fail(line_no, "task.h must lie in (0, 0.1]");
      h_line = line_no;
    } else if (key == "task.transient") {
      cfg.mackey_glass.transient = parse_double(value, line_no);
      if (cfg.mackey_glass.transient < 0.0) fail(line_no, "task.transient must be nonnegative");
      transient_line = line_no;
    } else if (key == "task.autonomous_steps") {
      cfg.mackey_glass.autonomous_steps = parse_long(value, line_no);
      if (cfg.mackey_glass.autonomous_steps < 1)
        fail(line_no, "task.autonomous_steps must be at least 1");
    } else if (key == "task.theta") {
      cfg.mackey_glass.theta = parse_double(value, line_no);
      if (cfg.mackey_glass.theta <= 0.0) fail(line_no, "task.theta must be positive");
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  std::vector<std::string> missing;
  if (!task_set) missing.push_back("task");
  if (cfg.reflectivities.empty()) missing.push_back("R");
  if (cfg.squeeze_strengths.empty()) missing.push_back("r");
  if (cfg.noise_variances.empty()) missing.push_back("sigma2_noise");
  if (!missing.empty()) {
    std::string msg = "config missing required keys:";
    for (const std::string& k : missing) msg += " " + k;
    throw std::invalid_argument(msg);
  }

  if (!slope_set && cfg.task == TaskKind::kMackeyGlass) cfg.encoding_slope = 1.0;

  if (cfg.task == TaskKind::kMackeyGlass) {
    const MackeyGlassTaskConfig& mg = cfg.mackey_glass;
    require_integral_multiple(mg.tau, mg.step, "task.tau", tau_line ? tau_line : h_line);
    require_integral_multiple(mg.sample_period, mg.step, "task.t_r", t_r_line ? t_r_line : h_line);
    require_integral_multiple(mg.transient, mg.step, "task.transient",
                              transient_line ? transient_line : h_line);
  }

  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "task = " << to_string(config.task) << "\n";
  out << "N = " << config.mode_count << "\n";
  out << "R = " << format_list(config.reflectivities) << "\n";
  out << "r = " << format_list(config.squeeze_strengths) << "\n";
  out << "sigma2_noise = " << format_list(config.noise_variances) << "\n";
  out << "r_input = " << format_double(config.input_squeeze) << "\n";
  out << "m = " << format_double(config.encoding_slope) << "\n";
  out << "washout = " << config.washout << "\n";
  out << "train_len = " << config.train_len << "\n";
  out << "test_len = " << config.test_len << "\n";
  out << "n_realizations = " << config.n_realizations << "\n";
  out << "master_seed = " << config.master_seed << "\n";
  out << "ridge = " << format_double(config.ridge) << "\n";
  out << "capacity_on_train = " << (config.capacity_on_train ? "true" : "false") << "\n";
  out << "validate_states = " << (config.validate_states ? "true" : "false") << "\n";
  out << "spectral_max_delay = " << config.spectral_max_delay << "\n";
  // Both task blocks are emitted so any config value survives the round
  // trip, not just the block selected by `task`.
  out << "task.max_delay = " << config.memory.max_delay << "\n";
  const MackeyGlassTaskConfig& mg = config.mackey_glass;
  out << "task.tau = " << format_double(mg.tau) << "\n";
  out << "task.t_r = " << format_double(mg.sample_period) << "\n";
  out << "task.h = " << format_double(mg.step) << "\n";
  out << "task.transient = " << format_double(mg.transient) << "\n";
  out << "task.autonomous_steps = " << mg.autonomous_steps << "\n";
  out << "task.theta = " << format_double(mg.theta) << "\n";
  return out.str();
}

}  // namespace qrc
