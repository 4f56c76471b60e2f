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

#ifndef QRC_EXPERIMENT_HPP
#define QRC_EXPERIMENT_HPP

#include <filesystem>
#include <vector>

#include "qrc/analysis.hpp"
#include "qrc/config.hpp"

namespace qrc {

/// All grid points of a sweep, noise axis fastest, reflectivity slowest.
std::vector<GridPoint> expand_grid(const ExperimentConfig& config);

struct ExperimentOutcome {
  /// 0: every grid point produced results (individual realization failures,
  ///    if any, are recorded in summary.json);
  /// 1: at least one grid point lost all of its realizations.
  int exit_code = 0;
  std::vector<PointResult> points;
};

/// Full sweep of the configured task. Writes into out_dir:
///   results.csv   one row per (grid point, realization, metric)
///   summary.json  resolved config echo plus per-point metric summaries
/// and per-grid-point subdirectories g000, g001, ... with task extras
/// (capacity_vs_delay.csv, autonomous_trace.csv, attractor.csv). The
/// narma10 task additionally writes one box-plot-ready MSE table per noise
/// level at the top of out_dir.
///
/// All CSV numbers carry 17 significant digits; reruns with the same seed
/// are byte-identical regardless of `threads`.
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir,
                                 int threads = 1);

/// Spectral-norm decay sweep over the (R, r) axes; writes results.csv,
/// summary.json and per-point spectral_norm.csv.
ExperimentOutcome run_spectral_norm_experiment(const ExperimentConfig& config,
                                               const std::filesystem::path& out_dir,
                                               int threads = 1);

}  // namespace qrc

#endif  // QRC_EXPERIMENT_HPP
