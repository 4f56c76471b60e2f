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

#ifndef QRC_ANALYSIS_HPP
#define QRC_ANALYSIS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qrc/config.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// Operator norms ||A^d||_2 for d = 0..max_delay, A = sqrt(R) S. Entry 0 is
/// always 1. For a passive crystal the sequence is exactly R^{d/2}; an
/// active crystal can only raise it, never lower it.
std::vector<double> spectral_norm_decay(const SymplecticTransform& crystal,
                                        double reflectivity,
                                        int max_delay);

/// Smallest delay whose capacity falls below `threshold`; capacities[d] is
/// the capacity at delay d. Returns len(capacities) when no entry falls
/// below.
int delay_cut(std::span<const double> capacities, double threshold = 0.9);

/// Distribution summary of one scalar metric across an ensemble.
struct EnsembleSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double median = 0.0;
  double decile1 = 0.0;  // 10th percentile
  double decile9 = 0.0;  // 90th percentile
  long count = 0;
};

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

EnsembleSummary summarize(std::vector<double> values);

/// One point of the sweep grid.
struct GridPoint {
  double reflectivity = 0.0;
  double squeeze_strength = 0.0;
  double noise_variance = 0.0;
};

struct RealizationResult {
  long realization = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  // Task-specific series, empty when not applicable.
  std::vector<double> capacity_curve;     // memory: capacity at delay d
  std::vector<double> norm_curve;         // spectral-norm: ||A^d||_2
  std::vector<double> autonomous_truth;   // mackey_glass
  std::vector<double> autonomous_pred;    // mackey_glass
};

struct RealizationFailure {
  long realization = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct PointResult {
  GridPoint point;
  std::vector<RealizationResult> realizations;  // ascending realization index
  std::vector<RealizationFailure> failures;
  std::map<std::string, EnsembleSummary> summaries;
};

/// Runs every realization of the configured task at one grid point and
/// aggregates the metric distributions.
///
/// Realization i runs with seed mix64(master_seed + i); results are stored
/// by index, so the outcome is independent of `threads` and of scheduling.
/// A realization that throws is recorded under failures, not dropped
/// silently.
PointResult run_ensemble(const ExperimentConfig& config, const GridPoint& point,
                         int threads = 1);

/// Ensemble of spectral-norm decay curves (no task pipeline, no noise).
PointResult run_norm_ensemble(const ExperimentConfig& config, const GridPoint& point,
                              int threads = 1);

}  // namespace qrc

#endif  // QRC_ANALYSIS_HPP
