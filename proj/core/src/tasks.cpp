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

#include "qrc/tasks.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrc {

namespace {

constexpr double kNarmaDivergenceBound = 10.0;

double mackey_glass_rhs(double value, double delayed) {
  const double d10 = std::pow(delayed, 10);
  return -0.1 * value + 0.2 * delayed / (1.0 + d10);
}

// Rounds ratio numerator/denominator to the nearest integer and requires the
// remainder to vanish; the grid arithmetic below assumes exact alignment.
long exact_steps(double numerator, double step, const char* label) {
  const double ratio = numerator / step;
  const long steps = static_cast<long>(std::llround(ratio));
  if (steps < 0 || std::abs(ratio - static_cast<double>(steps)) > 1e-9) {
    throw std::invalid_argument(std::string(label) +
                                " must be a whole number of integrator steps");
  }
  return steps;
}

}  // namespace

Vec gen_uniform_inputs(long count, Rng& rng) {
  if (count < 0) throw std::invalid_argument("negative input count");
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Vec inputs(count);
  for (long k = 0; k < count; ++k) inputs[k] = uniform(rng);
  return inputs;
}

TargetSeries delay_target(const Vec& inputs, long delay) {
  if (delay < 0) throw std::invalid_argument("negative delay");
  const long len = inputs.size();
  TargetSeries out;
  out.values = Vec::Zero(len);
  out.valid_begin = std::min(delay, len);
  out.valid_end = len;
  for (long k = out.valid_begin; k < len; ++k) out.values[k] = inputs[k - delay];
  return out;
}

TargetSeries narma10_target(const Vec& inputs) {
  const long len = inputs.size();
  constexpr long kOrder = 10;
  TargetSeries out;
  out.values = Vec::Zero(len);
  out.valid_begin = std::min(kOrder, len);
  out.valid_end = len;
  for (long k = kOrder; k < len; ++k) {
    const double u_prev = 0.2 * inputs[k - 1];
    const double u_old = 0.2 * inputs[k - kOrder];
    double window = 0.0;
    for (long i = 1; i <= kOrder; ++i) window += out.values[k - i];
    const double y = 0.3 * out.values[k - 1] +
                     0.05 * out.values[k - 1] * window +
                     1.5 * u_prev * u_old + 0.1;
    if (!std::isfinite(y) || std::abs(y) > kNarmaDivergenceBound) {
      throw std::runtime_error("narma10 recursion diverged at step " +
                               std::to_string(k));
    }
    out.values[k] = y;
  }
  return out;
}

TargetSeries forecast_target(const Vec& inputs) {
  const long len = inputs.size();
  TargetSeries out;
  out.values = Vec::Zero(len);
  out.valid_begin = 0;
  out.valid_end = std::max(0L, len - 1);
  for (long k = 0; k + 1 < len; ++k) out.values[k] = inputs[k + 1];
  return out;
}

Vec mackey_glass_series(const MackeyGlassParams& params, long sample_count) {
  if (sample_count < 0) throw std::invalid_argument("negative sample count");
  if (!(params.step > 0.0) || params.step > 0.1 + 1e-12)
    throw std::invalid_argument("integrator step must lie in (0, 0.1]");
  if (!(params.delay > 0.0) || !(params.sample_period > 0.0))
    throw std::invalid_argument("delay and sample period must be positive");
  if (!(params.transient >= 0.0))
    throw std::invalid_argument("negative transient");
  if (!std::isfinite(params.history))
    throw std::invalid_argument("non-finite history value");

  const double h = params.step;
  const long delay_steps = exact_steps(params.delay, h, "delay");
  const long stride = exact_steps(params.sample_period, h, "sample period");
  const long transient_steps = exact_steps(params.transient, h, "transient");
  if (delay_steps < 1) throw std::invalid_argument("delay shorter than a step");

  const long forward_steps =
      transient_steps + (sample_count > 0 ? (sample_count - 1) * stride : 0);
  // grid[i] = s((i - delay_steps) * h); indices [0, delay_steps] hold the
  // constant history, so every delayed lookup below stays in range.
  std::vector<double> grid(static_cast<std::size_t>(delay_steps + forward_steps) + 1,
                           params.history);
  for (long j = 0; j < forward_steps; ++j) {
    const std::size_t i = static_cast<std::size_t>(delay_steps + j);
    const double y = grid[i];
    const double d0 = grid[i - delay_steps];
    const double d1 = grid[i - delay_steps + 1];
    const double dmid = 0.5 * (d0 + d1);
    const double k1 = mackey_glass_rhs(y, d0);
    const double k2 = mackey_glass_rhs(y + 0.5 * h * k1, dmid);
    const double k3 = mackey_glass_rhs(y + 0.5 * h * k2, dmid);
    const double k4 = mackey_glass_rhs(y + h * k3, d1);
    grid[i + 1] = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Vec samples(sample_count);
  for (long k = 0; k < sample_count; ++k) {
    samples[k] = grid[static_cast<std::size_t>(delay_steps + transient_steps +
                                               k * stride)];
  }
  return samples;
}

Vec mackey_glass_series(MackeyGlassParams params, long sample_count, Rng& rng) {
  std::uniform_real_distribution<double> history(0.5, 1.5);
  params.history = history(rng);
  return mackey_glass_series(params, sample_count);
}

DriveResult drive_closed_loop(const std::function<double(const Vec&)>& predictor,
                              Reservoir& reservoir,
                              double first_input,
                              long steps,
                              double noise_variance,
                              Rng& rng,
                              double guard_limit) {
  if (steps < 0) throw std::invalid_argument("negative drive length");
  if (!(guard_limit > 0.0)) throw std::invalid_argument("guard limit must be positive");
  DriveResult out;
  out.trajectory = Vec(steps);
  long filled = 0;
  double input = first_input;
  for (long k = 0; k < steps; ++k) {
    Vec row = reservoir.step(input, noise_variance, rng);
    const double prediction = predictor(row);
    if (!std::isfinite(prediction) || std::abs(prediction) > guard_limit) {
      out.diverged = true;
      break;
    }
    out.trajectory[filled++] = prediction;
    input = prediction;
  }
  out.trajectory.conservativeResize(filled);
  return out;
}

DriveResult autonomous_drive(const TrainedReadout& readout,
                             Reservoir& reservoir,
                             double first_input,
                             long steps,
                             double noise_variance,
                             Rng& rng,
                             double guard_limit) {
  auto predictor = [&readout](const Vec& row) {
    const double z = readout.bias + readout.weights.dot(row);
    return readout.target_mean + readout.target_std * z;
  };
  return drive_closed_loop(predictor, reservoir, first_input, steps,
                           noise_variance, rng, guard_limit);
}

long valid_horizon(const Vec& predicted, const Vec& truth, double threshold) {
  if (truth.size() == 0) throw std::invalid_argument("empty truth series");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  const double mean = truth.mean();
  const double std = std::sqrt((truth.array() - mean).square().mean());
  if (!(std > 0.0)) throw std::invalid_argument("truth series has zero variance");
  const double bound = threshold * std;
  const long overlap = std::min(predicted.size(), truth.size());
  for (long k = 0; k < overlap; ++k) {
    if (std::abs(predicted[k] - truth[k]) > bound) return k;
  }
  return overlap;
}

}  // namespace qrc
