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

#include "qrc/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qrc {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string point_dir_name(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "g%03zu", index);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

void write_results_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                       const std::vector<PointResult>& points) {
  std::ofstream out = open_for_write(path);
  out << "task,N,R,r,sigma2,m,seed,realization,metric_name,metric_value\n";
  const std::string head = to_string(cfg.task) + "," + std::to_string(cfg.mode_count) + ",";
  for (const PointResult& pr : points) {
    const std::string coords = fmt(pr.point.reflectivity) + "," +
                               fmt(pr.point.squeeze_strength) + "," +
                               fmt(pr.point.noise_variance) + "," + fmt(cfg.encoding_slope) + ",";
    for (const RealizationResult& r : pr.realizations) {
      for (const auto& [name, value] : r.metrics) {
        out << head << coords << r.seed << "," << r.realization << "," << name << ","
            << fmt(value) << "\n";
      }
    }
  }
}

void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& cfg,
                        const std::vector<PointResult>& points) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["config"] = serialize_config(cfg);
  nlohmann::ordered_json point_array = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointResult& pr = points[i];
    nlohmann::ordered_json entry;
    entry["dir"] = point_dir_name(i);
    entry["R"] = pr.point.reflectivity;
    entry["r"] = pr.point.squeeze_strength;
    entry["sigma2"] = pr.point.noise_variance;
    entry["n_realizations"] = pr.realizations.size();
    nlohmann::ordered_json summaries;
    for (const auto& [name, s] : pr.summaries) {
      summaries[name] = {{"mean", s.mean},       {"stddev", s.stddev},
                         {"median", s.median},   {"decile1", s.decile1},
                         {"decile9", s.decile9}, {"count", s.count}};
    }
    entry["summaries"] = std::move(summaries);
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const RealizationFailure& f : pr.failures) {
      failures.push_back(
          {{"realization", f.realization}, {"seed", f.seed}, {"message", f.message}});
    }
    entry["failures"] = std::move(failures);
    point_array.push_back(std::move(entry));
  }
  doc["points"] = std::move(point_array);
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << "\n";
}

void write_capacity_csv(const std::filesystem::path& dir, const PointResult& pr) {
  std::ofstream out = open_for_write(dir / "capacity_vs_delay.csv");
  out << "realization,d,capacity\n";
  for (const RealizationResult& r : pr.realizations) {
    for (std::size_t d = 0; d < r.capacity_curve.size(); ++d)
      out << r.realization << "," << d << "," << fmt(r.capacity_curve[d]) << "\n";
  }
}

void write_norm_csv(const std::filesystem::path& dir, const PointResult& pr) {
  std::ofstream out = open_for_write(dir / "spectral_norm.csv");
  out << "realization,d,norm\n";
  for (const RealizationResult& r : pr.realizations) {
    for (std::size_t d = 0; d < r.norm_curve.size(); ++d)
      out << r.realization << "," << d << "," << fmt(r.norm_curve[d]) << "\n";
  }
}

void write_autonomous_csvs(const std::filesystem::path& dir, const PointResult& pr) {
  {
    std::ofstream out = open_for_write(dir / "autonomous_trace.csv");
    out << "step,truth,prediction,realization\n";
    for (const RealizationResult& r : pr.realizations) {
      std::size_t steps = std::min(r.autonomous_truth.size(), r.autonomous_pred.size());
      for (std::size_t k = 0; k < steps; ++k) {
        out << k << "," << fmt(r.autonomous_truth[k]) << "," << fmt(r.autonomous_pred[k]) << ","
            << r.realization << "\n";
      }
    }
  }
  // Delay-embedded portrait of the first surviving realization's autonomous
  // trajectory; offset 6 samples (18 time units at t_r = 3).
  if (!pr.realizations.empty()) {
    constexpr std::size_t kOffset = 6;
    const std::vector<double>& y = pr.realizations.front().autonomous_pred;
    std::ofstream out = open_for_write(dir / "attractor.csv");
    out << "y_k,y_km6\n";
    for (std::size_t k = kOffset; k < y.size(); ++k)
      out << fmt(y[k]) << "," << fmt(y[k - kOffset]) << "\n";
  }
}

void write_narma_box_csvs(const std::filesystem::path& out_dir, const ExperimentConfig& cfg,
                          const std::vector<PointResult>& points) {
  for (std::size_t ni = 0; ni < cfg.noise_variances.size(); ++ni) {
    std::ofstream out =
        open_for_write(out_dir / ("narma10_mse_noise" + std::to_string(ni) + ".csv"));
    out << "R,r,realization,mse\n";
    for (const PointResult& pr : points) {
      if (pr.point.noise_variance != cfg.noise_variances[ni]) continue;
      for (const RealizationResult& r : pr.realizations) {
        out << fmt(pr.point.reflectivity) << "," << fmt(pr.point.squeeze_strength) << ","
            << r.realization << "," << fmt(r.metrics.at("mse")) << "\n";
      }
    }
  }
}

}  // namespace

std::vector<GridPoint> expand_grid(const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  grid.reserve(config.reflectivities.size() * config.squeeze_strengths.size() *
               config.noise_variances.size());
  for (double reflectivity : config.reflectivities)
    for (double squeeze : config.squeeze_strengths)
      for (double noise : config.noise_variances)
        grid.push_back(GridPoint{reflectivity, squeeze, noise});
  return grid;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir, int threads) {
  std::filesystem::create_directories(out_dir);
  std::vector<GridPoint> grid = expand_grid(config);

  ExperimentOutcome outcome;
  outcome.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PointResult pr = run_ensemble(config, grid[i], threads);
    if (pr.realizations.empty()) outcome.exit_code = 1;

    std::filesystem::path dir = out_dir / point_dir_name(i);
    std::filesystem::create_directories(dir);
    switch (config.task) {
      case TaskKind::kMemory:
        write_capacity_csv(dir, pr);
        break;
      case TaskKind::kMackeyGlass:
        write_autonomous_csvs(dir, pr);
        break;
      case TaskKind::kNarma10:
        break;
    }
    outcome.points.push_back(std::move(pr));
  }

  if (config.task == TaskKind::kNarma10)
    write_narma_box_csvs(out_dir, config, outcome.points);

  write_results_csv(out_dir / "results.csv", config, outcome.points);
  write_summary_json(out_dir / "summary.json", config, outcome.points);
  return outcome;
}

ExperimentOutcome run_spectral_norm_experiment(const ExperimentConfig& config,
                                               const std::filesystem::path& out_dir,
                                               int threads) {
  std::filesystem::create_directories(out_dir);
  // The norm curves carry no readout, so the noise axis collapses to a
  // single zero coordinate.
  std::vector<GridPoint> grid;
  for (double reflectivity : config.reflectivities)
    for (double squeeze : config.squeeze_strengths)
      grid.push_back(GridPoint{reflectivity, squeeze, 0.0});

  ExperimentOutcome outcome;
  outcome.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PointResult pr = run_norm_ensemble(config, grid[i], threads);
    if (pr.realizations.empty()) outcome.exit_code = 1;

    std::filesystem::path dir = out_dir / point_dir_name(i);
    std::filesystem::create_directories(dir);
    write_norm_csv(dir, pr);
    outcome.points.push_back(std::move(pr));
  }

  write_results_csv(out_dir / "results.csv", config, outcome.points);
  write_summary_json(out_dir / "summary.json", config, outcome.points);
  return outcome;
}

}  // namespace qrc
