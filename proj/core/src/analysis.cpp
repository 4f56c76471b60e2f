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

#include "qrc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qrc/readout.hpp"
#include "qrc/rng.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

namespace {

/// Runs body(0..count-1) across a worker pool. Indices are handed out by an
/// atomic counter; the first exception escaping `body` is rethrown after all
/// workers join.
void run_indexed(long count, int threads, const std::function<void(long)>& body) {
  const long capped = std::min<long>(std::max(threads, 1), std::max<long>(count, 1));
  if (capped <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(capped));
  for (long t = 0; t < capped; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
}

ReservoirConfig make_reservoir_config(const ExperimentConfig& config,
                                      const GridPoint& point,
                                      std::uint64_t seed) {
  ReservoirConfig rc;
  rc.mode_count = config.mode_count;
  rc.reflectivity = point.reflectivity;
  rc.squeeze_strength = point.squeeze_strength;
  rc.input_squeeze = config.input_squeeze;
  rc.encoding_slope = config.encoding_slope;
  rc.crystal_seed = seed;
  return rc;
}

double predict_one(const TrainedReadout& readout, const Vec& row) {
  const double z = readout.bias + readout.weights.dot(row);
  return readout.target_mean + readout.target_std * z;
}

/// Least-squares slope of ln(values[d]) against d.
double fitted_log_slope(const std::vector<double>& values) {
  const long n = static_cast<long>(values.size());
  if (n < 2) throw std::invalid_argument("need at least two points for a slope");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (long d = 0; d < n; ++d) {
    if (!(values[static_cast<std::size_t>(d)] > 0.0))
      throw std::invalid_argument("log slope requires positive values");
    const double x = static_cast<double>(d);
    const double y = std::log(values[static_cast<std::size_t>(d)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

void validate_point(const ExperimentConfig& config, const GridPoint& point) {
  if (config.mode_count < 1)
    throw std::invalid_argument("mode count must be at least 1");
  if (config.n_realizations < 1)
    throw std::invalid_argument("need at least one realization");
  if (!(point.reflectivity >= 0.0) || !(point.reflectivity <= 1.0))
    throw std::invalid_argument("reflectivity outside [0, 1]");
  if (!(point.squeeze_strength >= 0.0))
    throw std::invalid_argument("negative crystal squeezing");
  if (!(point.noise_variance >= 0.0))
    throw std::invalid_argument("negative readout noise variance");
  if (!(config.input_squeeze >= 0.0))
    throw std::invalid_argument("negative input squeezing");
}

void validate_task(const ExperimentConfig& config) {
  if (config.washout < 0 || config.train_len < 2 || config.test_len < 2)
    throw std::invalid_argument("split lengths too small");
  switch (config.task) {
    case TaskKind::kMemory:
      if (config.memory.max_delay < 1)
        throw std::invalid_argument("memory task needs max_delay >= 1");
      if (config.washout < config.memory.max_delay)
        throw std::invalid_argument("washout must cover the largest delay");
      break;
    case TaskKind::kNarma10:
      if (config.washout < 10)
        throw std::invalid_argument("washout must cover the narma10 warmup");
      break;
    case TaskKind::kMackeyGlass: {
      if (config.test_len < 3)
        throw std::invalid_argument("mackey_glass needs test_len >= 3");
      if (config.mackey_glass.autonomous_steps < 1)
        throw std::invalid_argument("autonomous drive needs at least one step");
      if (!(config.mackey_glass.theta > 0.0))
        throw std::invalid_argument("valid-horizon threshold must be positive");
      MackeyGlassParams probe;
      probe.delay = config.mackey_glass.tau;
      probe.sample_period = config.mackey_glass.sample_period;
      probe.step = config.mackey_glass.step;
      probe.transient = config.mackey_glass.transient;
      mackey_glass_series(probe, 0);  // validates the grid alignment
      break;
    }
  }
}

struct Split {
  long train_begin = 0;
  long train_end = 0;
  long eval_begin = 0;
  long eval_end = 0;
};

Split make_split(const ExperimentConfig& config, bool eval_on_train) {
  Split s;
  s.train_begin = config.washout;
  s.train_end = config.washout + config.train_len;
  s.eval_begin = eval_on_train ? s.train_begin : s.train_end;
  s.eval_end = eval_on_train ? s.train_end : s.train_end + config.test_len;
  return s;
}

void run_memory_task(const ExperimentConfig& config, const GridPoint& point,
                     const ReservoirConfig& rc, const SymplecticTransform& crystal,
                     Rng& rng, RealizationResult& out) {
  const long total = config.washout + config.train_len + config.test_len;
  Vec inputs = gen_uniform_inputs(total, rng);
  RunOptions options{config.validate_states};
  Mat rows = run_sequence(std::span<const double>(inputs.data(), inputs.size()),
                          rc, crystal, point.noise_variance, rng, options);
  const Split split = make_split(config, config.capacity_on_train);

  Mat train_features = rows.middleRows(split.train_begin,
                                       split.train_end - split.train_begin);
  Mat eval_features = rows.middleRows(split.eval_begin,
                                      split.eval_end - split.eval_begin);
  // One SVD serves every delay; only the target column changes.
  LeastSquaresSolver solver(build_design_matrix(train_features), 1e-10,
                            config.ridge);

  const int max_delay = config.memory.max_delay;
  std::vector<double> capacities(static_cast<std::size_t>(max_delay) + 1);
  for (int d = 0; d <= max_delay; ++d) {
    TargetSeries target = delay_target(inputs, d);
    // washout >= max_delay keeps both blocks inside the valid range
    TrainedReadout readout = solver.fit(
        target.values.segment(split.train_begin, split.train_end - split.train_begin));
    Vec prediction = predict(readout, eval_features);
    capacities[static_cast<std::size_t>(d)] = capacity(
        prediction,
        target.values.segment(split.eval_begin, split.eval_end - split.eval_begin));
  }
  out.capacity_curve = capacities;
  // The fresh input reaches the detector without a crystal pass, so the
  // x-moments are even functions of it and capacity at delay 0 sits near
  // zero for any reservoir. The cut therefore scans delays >= 1.
  std::span<const double> past(capacities.data() + 1, capacities.size() - 1);
  out.metrics["delay_cut"] = static_cast<double>(1 + delay_cut(past));
  out.metrics["capacity_sum"] =
      std::accumulate(capacities.begin(), capacities.end(), 0.0);
}

void run_narma10_task(const ExperimentConfig& config, const GridPoint& point,
                      const ReservoirConfig& rc, const SymplecticTransform& crystal,
                      Rng& rng, RealizationResult& out) {
  const long total = config.washout + config.train_len + config.test_len;
  Vec inputs = gen_uniform_inputs(total, rng);
  RunOptions options{config.validate_states};
  Mat rows = run_sequence(std::span<const double>(inputs.data(), inputs.size()),
                          rc, crystal, point.noise_variance, rng, options);
  TargetSeries target = narma10_target(inputs);
  const Split split = make_split(config, false);

  Mat train_features = rows.middleRows(split.train_begin,
                                       split.train_end - split.train_begin);
  Vec train_target = target.values.segment(split.train_begin,
                                           split.train_end - split.train_begin);
  TrainedReadout readout =
      fit_readout(build_design_matrix(train_features), train_target, 1e-10,
                  config.ridge);
  out.metrics["mse_train"] =
      relative_mse(predict(readout, train_features), train_target);

  Mat test_features = rows.middleRows(split.eval_begin,
                                      split.eval_end - split.eval_begin);
  Vec test_target = target.values.segment(split.eval_begin,
                                          split.eval_end - split.eval_begin);
  Vec prediction = predict(readout, test_features);
  out.metrics["mse"] = relative_mse(prediction, test_target);
  out.metrics["nmse"] = normalized_mse(prediction, test_target);
}

void run_mackey_glass_task(const ExperimentConfig& config, const GridPoint& point,
                           const ReservoirConfig& rc,
                           const SymplecticTransform& crystal, Rng& rng,
                           RealizationResult& out) {
  const long total = config.washout + config.train_len + config.test_len;
  const long drive_steps = config.mackey_glass.autonomous_steps;
  MackeyGlassParams params;
  params.delay = config.mackey_glass.tau;
  params.sample_period = config.mackey_glass.sample_period;
  params.step = config.mackey_glass.step;
  params.transient = config.mackey_glass.transient;
  // One extra tail of truth samples continues the series past the fed range
  // for the closed-loop comparison.
  Vec series = mackey_glass_series(params, total + drive_steps + 1, rng);

  RunOptions options{config.validate_states};
  Reservoir reservoir(rc, crystal, options);
  Mat rows(total, observable_count(rc.mode_count));
  for (long k = 0; k < total; ++k)
    rows.row(k) = reservoir.step(series[k], point.noise_variance, rng).transpose();

  TargetSeries target = forecast_target(series.head(total));
  const Split split = make_split(config, false);
  Mat train_features = rows.middleRows(split.train_begin,
                                       split.train_end - split.train_begin);
  Vec train_target = target.values.segment(split.train_begin,
                                           split.train_end - split.train_begin);
  TrainedReadout readout =
      fit_readout(build_design_matrix(train_features), train_target, 1e-10,
                  config.ridge);

  // The final fed row has no one-step truth inside the fed range.
  const long eval_end = std::min(split.eval_end, target.valid_end);
  Mat test_features = rows.middleRows(split.eval_begin, eval_end - split.eval_begin);
  Vec test_target = target.values.segment(split.eval_begin,
                                          eval_end - split.eval_begin);
  Vec prediction = predict(readout, test_features);
  out.metrics["mse"] = relative_mse(prediction, test_target);
  out.metrics["nmse"] = normalized_mse(prediction, test_target);

  const double guard = 10.0 * train_target.cwiseAbs().maxCoeff();
  const double seed_prediction = predict_one(readout, rows.row(total - 1));
  DriveResult drive = autonomous_drive(readout, reservoir, seed_prediction,
                                       drive_steps, point.noise_variance, rng,
                                       guard);
  Vec predicted(1 + drive.trajectory.size());
  predicted[0] = seed_prediction;
  predicted.tail(drive.trajectory.size()) = drive.trajectory;
  Vec truth_tail = series.segment(total, drive_steps + 1);
  out.autonomous_pred.assign(predicted.data(), predicted.data() + predicted.size());
  out.autonomous_truth.assign(truth_tail.data(), truth_tail.data() + truth_tail.size());
  out.metrics["valid_horizon"] = static_cast<double>(
      valid_horizon(predicted, truth_tail, config.mackey_glass.theta));
  out.metrics["diverged"] = drive.diverged ? 1.0 : 0.0;
}

RealizationResult run_task_realization(const ExperimentConfig& config,
                                       const GridPoint& point, long index) {
  RealizationResult out;
  out.realization = index;
  out.seed = realization_seed(config.master_seed, static_cast<std::uint64_t>(index));
  Rng rng(out.seed);
  ReservoirConfig rc = make_reservoir_config(config, point, out.seed);
  SymplecticTransform crystal = draw_crystal(rc, rng);
  out.metrics["spectral_radius"] =
      echo_state_check(point.reflectivity, crystal).spectral_radius;
  switch (config.task) {
    case TaskKind::kMemory:
      run_memory_task(config, point, rc, crystal, rng, out);
      break;
    case TaskKind::kNarma10:
      run_narma10_task(config, point, rc, crystal, rng, out);
      break;
    case TaskKind::kMackeyGlass:
      run_mackey_glass_task(config, point, rc, crystal, rng, out);
      break;
  }
  return out;
}

RealizationResult run_norm_realization(const ExperimentConfig& config,
                                       const GridPoint& point, long index) {
  RealizationResult out;
  out.realization = index;
  out.seed = realization_seed(config.master_seed, static_cast<std::uint64_t>(index));
  Rng rng(out.seed);
  ReservoirConfig rc = make_reservoir_config(config, point, out.seed);
  SymplecticTransform crystal = draw_crystal(rc, rng);
  out.metrics["spectral_radius"] =
      echo_state_check(point.reflectivity, crystal).spectral_radius;
  out.norm_curve =
      spectral_norm_decay(crystal, point.reflectivity, config.spectral_max_delay);
  out.metrics["decay_rate"] = fitted_log_slope(out.norm_curve);
  out.metrics["final_norm"] = out.norm_curve.back();
  return out;
}

PointResult collect_ensemble(
    const ExperimentConfig& config, const GridPoint& point, int threads,
    const std::function<RealizationResult(long)>& one_realization) {
  const long n = config.n_realizations;
  std::vector<std::optional<RealizationResult>> results(static_cast<std::size_t>(n));
  std::vector<std::optional<RealizationFailure>> failures(static_cast<std::size_t>(n));
  run_indexed(n, threads, [&](long i) {
    const std::size_t slot = static_cast<std::size_t>(i);
    try {
      results[slot] = one_realization(i);
    } catch (const std::exception& e) {
      failures[slot] = RealizationFailure{
          i, realization_seed(config.master_seed, static_cast<std::uint64_t>(i)),
          e.what()};
    }
  });

  PointResult out;
  out.point = point;
  std::map<std::string, std::vector<double>> columns;
  for (long i = 0; i < n; ++i) {
    const std::size_t slot = static_cast<std::size_t>(i);
    if (results[slot]) {
      for (const auto& [name, value] : results[slot]->metrics)
        columns[name].push_back(value);
      out.realizations.push_back(std::move(*results[slot]));
    } else if (failures[slot]) {
      out.failures.push_back(std::move(*failures[slot]));
    }
  }
  for (auto& [name, values] : columns)
    out.summaries[name] = summarize(std::move(values));
  return out;
}

}  // namespace

std::vector<double> spectral_norm_decay(const SymplecticTransform& crystal,
                                        double reflectivity, int max_delay) {
  if (max_delay < 0) throw std::invalid_argument("negative delay range");
  if (!(reflectivity >= 0.0) || !(reflectivity <= 1.0))
    throw std::invalid_argument("reflectivity outside [0, 1]");
  const long dim = crystal.matrix.rows();
  std::vector<double> norms(static_cast<std::size_t>(max_delay) + 1);
  norms[0] = 1.0;
  const Mat one_step = std::sqrt(reflectivity) * crystal.matrix;
  Mat power = Mat::Identity(dim, dim);
  for (int d = 1; d <= max_delay; ++d) {
    power = one_step * power;
    norms[static_cast<std::size_t>(d)] = singular_spectrum(power)[0];
  }
  return norms;
}

int delay_cut(std::span<const double> capacities, double threshold) {
  for (std::size_t d = 0; d < capacities.size(); ++d)
    if (capacities[d] < threshold) return static_cast<int>(d);
  return static_cast<int>(capacities.size());
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::invalid_argument("quantile level outside [0, 1]");
  const double position = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lower = static_cast<std::size_t>(position);
  if (lower + 1 >= sorted.size()) return sorted[sorted.size() - 1];
  const double fraction = position - static_cast<double>(lower);
  return (1.0 - fraction) * sorted[lower] + fraction * sorted[lower + 1];
}

EnsembleSummary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summary of empty ensemble");
  EnsembleSummary s;
  s.count = static_cast<long>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  double variance = 0.0;
  for (double v : values) variance += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(variance / static_cast<double>(values.size()));
  std::sort(values.begin(), values.end());
  std::span<const double> sorted(values.data(), values.size());
  s.median = quantile_sorted(sorted, 0.5);
  s.decile1 = quantile_sorted(sorted, 0.1);
  s.decile9 = quantile_sorted(sorted, 0.9);
  return s;
}

PointResult run_ensemble(const ExperimentConfig& config, const GridPoint& point,
                         int threads) {
  validate_point(config, point);
  validate_task(config);
  return collect_ensemble(config, point, threads, [&](long i) {
    return run_task_realization(config, point, i);
  });
}

PointResult run_norm_ensemble(const ExperimentConfig& config, const GridPoint& point,
                              int threads) {
  validate_point(config, point);
  if (config.spectral_max_delay < 1)
    throw std::invalid_argument("spectral norm range needs max delay >= 1");
  if (!(point.reflectivity > 0.0))
    throw std::invalid_argument("norm decay needs positive reflectivity");
  return collect_ensemble(config, point, threads, [&](long i) {
    return run_norm_realization(config, point, i);
  });
}

}  // namespace qrc
