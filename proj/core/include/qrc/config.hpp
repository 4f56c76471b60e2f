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

#ifndef QRC_CONFIG_HPP
#define QRC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qrc {

enum class TaskKind { kMemory, kNarma10, kMackeyGlass };

std::string to_string(TaskKind kind);

struct MemoryTaskConfig {
  int max_delay = 25;  // capacities evaluated for delays 0..max_delay

  bool operator==(const MemoryTaskConfig&) const = default;
};

struct MackeyGlassTaskConfig {
  double tau = 17.0;
  double sample_period = 3.0;  // t_r
  double step = 0.1;           // integrator h
  double transient = 1000.0;
  long autonomous_steps = 100;
  double theta = 0.3;  // valid-horizon threshold, in units of std(truth)

  bool operator==(const MackeyGlassTaskConfig&) const = default;
};

/// Full description of one experiment: reservoir parameters (with sweep
/// axes), task selection, split sizes, ensemble size, and seeding. The
/// effective grid is the Cartesian product of the three sweep axes.
struct ExperimentConfig {
  TaskKind task = TaskKind::kMemory;

  int mode_count = 8;                      // N
  std::vector<double> reflectivities;      // R axis (required)
  std::vector<double> squeeze_strengths;   // r axis (required)
  std::vector<double> noise_variances;     // sigma2_noise axis (required)
  double input_squeeze = 2.0;              // r_input
  double encoding_slope = 0.25;            // m; defaults to 1.0 for mackey_glass

  long washout = 200;
  long train_len = 4000;
  long test_len = 1000;
  long n_realizations = 100;
  std::uint64_t master_seed = 1;

  double ridge = 0.0;              // off by default
  bool capacity_on_train = false;  // evaluate capacities on the training split
  bool validate_states = true;     // per-step physicality verification
  int spectral_max_delay = 40;     // d range of the spectral-norm command

  MemoryTaskConfig memory;
  MackeyGlassTaskConfig mackey_glass;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses `key = value` text (one assignment per line, `#` comments, lists
/// comma-separated, task options under `task.`). Unknown keys, malformed
/// lines, and out-of-range values all throw std::invalid_argument with the
/// offending line number.
ExperimentConfig parse_config_text(std::string_view text);

ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace qrc

#endif  // QRC_CONFIG_HPP
