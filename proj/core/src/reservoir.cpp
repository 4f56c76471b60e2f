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

#include "qrc/reservoir.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qrc {

namespace {

constexpr double kEchoStateGate = 1.0 - 1e-9;
// Strong squeezing pushes most draws past the gate: at eight modes with
// reflectivity 0.75 and pump 1.5 fewer than one draw in a thousand is
// contractive, so the budget has to cover a few thousand rejections.
constexpr int kMaxCrystalAttempts = 10000;

void require_reflectivity(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw std::invalid_argument("reflectivity must lie in [0, 1], got " +
                                std::to_string(reflectivity));
  }
}

// Inexpensive necessary conditions for a covariance; the full uncertainty
// check lives in is_physical and runs when RunOptions::validate_states is
// set.
void require_covariance_sane(const CovarianceState& state, const char* label) {
  const Mat& g = state.matrix;
  if (g.rows() != g.cols() || g.rows() == 0 || g.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(label) + ": covariance must be square, even-sized");
  }
  if (!g.allFinite()) {
    throw std::invalid_argument(std::string(label) + ": covariance has non-finite entries");
  }
  double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument(std::string(label) + ": covariance is not symmetric");
  }
  if (g.diagonal().minCoeff() < 0.0) {
    throw std::invalid_argument(std::string(label) + ": negative variance on the diagonal");
  }
}

void require_config(const ReservoirConfig& config) {
  if (config.mode_count < 1) {
    throw std::invalid_argument("mode count must be at least 1");
  }
  if (!(config.reflectivity >= 0.0 && config.reflectivity < 1.0)) {
    throw std::invalid_argument("reflectivity must lie in [0, 1)");
  }
  if (config.squeeze_strength < 0.0 || !std::isfinite(config.squeeze_strength)) {
    throw std::invalid_argument("crystal squeeze strength must be finite and non-negative");
  }
  if (config.input_squeeze < 0.0 || !std::isfinite(config.input_squeeze)) {
    throw std::invalid_argument("input squeeze strength must be finite and non-negative");
  }
  if (!std::isfinite(config.encoding_slope)) {
    throw std::invalid_argument("encoding slope must be finite");
  }
}

}  // namespace

int observable_count(int mode_count) {
  if (mode_count < 1) {
    throw std::invalid_argument("mode count must be at least 1");
  }
  return mode_count * (3 * mode_count + 1) / 2;
}

double encode_input(double sample, double slope) {
  if (!std::isfinite(sample)) {
    throw std::invalid_argument("input sample must be finite");
  }
  if (!std::isfinite(slope)) {
    throw std::invalid_argument("encoding slope must be finite");
  }
  return slope * M_PI * sample;
}

LoopState vacuum_loop_state(int mode_count) {
  return LoopState{vacuum_state(mode_count), 0};
}

LoopStepResult loop_step(const LoopState& state,
                         const CovarianceState& input,
                         double reflectivity,
                         const SymplecticTransform& crystal) {
  require_reflectivity(reflectivity);
  require_covariance_sane(state.covariance, "loop state");
  require_covariance_sane(input, "input state");
  const long dim = state.covariance.matrix.rows();
  if (input.matrix.rows() != dim || crystal.matrix.rows() != dim) {
    throw std::invalid_argument("loop_step: state, input and crystal dimensions disagree");
  }

  const Mat& s = crystal.matrix;
  const double R = reflectivity;

  Mat mixed = R * state.covariance.matrix + (1.0 - R) * input.matrix;
  Mat conjugated = s * mixed * s.transpose();
  // Keep the stored state exactly symmetric against rounding drift.
  Mat next = 0.5 * (conjugated + conjugated.transpose());

  LoopStepResult out;
  out.state = LoopState{CovarianceState{std::move(next)}, state.step_index + 1};
  out.emitted = CovarianceState{(1.0 - R) * state.covariance.matrix + R * input.matrix};
  return out;
}

CovarianceState expanded_covariance_oracle(std::span<const CovarianceState> history,
                                           double reflectivity,
                                           const SymplecticTransform& crystal,
                                           int max_delay) {
  require_reflectivity(reflectivity);
  if (max_delay < 0) {
    throw std::invalid_argument("max_delay must be non-negative");
  }
  if (history.size() < static_cast<size_t>(max_delay) + 1) {
    throw std::invalid_argument("history too short: need at least max_delay + 1 inputs");
  }
  const long dim = crystal.matrix.rows();
  const long k = static_cast<long>(history.size()) - 1;

  const Mat& s = crystal.matrix;
  Mat a = std::sqrt(reflectivity) * s;
  Mat power = Mat::Identity(dim, dim);  // A^d
  Mat sum = Mat::Zero(dim, dim);
  for (int d = 0; d <= max_delay; ++d) {
    const CovarianceState& in = history[k - d];
    require_covariance_sane(in, "history entry");
    if (in.matrix.rows() != dim) {
      throw std::invalid_argument("history entry dimension disagrees with the crystal");
    }
    sum += power * in.matrix * power.transpose();
    power = a * power;
  }
  Mat conjugated = (1.0 - reflectivity) * s * sum * s.transpose();
  Mat result = 0.5 * (conjugated + conjugated.transpose());
  return CovarianceState{std::move(result)};
}

Vec extract_observables(const CovarianceState& emitted) {
  require_covariance_sane(emitted, "emitted state");
  const int n = emitted.mode_count();

  Mat xx(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) xx(i, j) = emitted.matrix(2 * i, 2 * j);
  }
  if (xx.diagonal().minCoeff() <= 0.0) {
    throw std::invalid_argument("extract_observables: non-positive x variance");
  }
  FourthMoments fm = wick_fourth_moments(xx);

  Vec obs(observable_count(n));
  long idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) obs[idx++] = xx(i, j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) obs[idx++] = fm.m22(i, j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) obs[idx++] = fm.m31(i, j);
  }
  return obs;
}

Vec add_readout_noise(const Vec& observables, double noise_variance, Rng& rng) {
  if (noise_variance < 0.0 || !std::isfinite(noise_variance)) {
    throw std::invalid_argument("noise variance must be finite and non-negative");
  }
  if (noise_variance == 0.0) return observables;

  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance));
  Vec noisy = observables;
  for (long i = 0; i < noisy.size(); ++i) noisy[i] += gauss(rng);
  return noisy;
}

EchoStateReport echo_state_check(double reflectivity, const SymplecticTransform& crystal) {
  require_reflectivity(reflectivity);
  double rho = spectral_radius(std::sqrt(reflectivity) * crystal.matrix);
  return EchoStateReport{rho, rho < kEchoStateGate};
}

SymplecticTransform draw_crystal(const ReservoirConfig& config, Rng& rng) {
  require_config(config);
  double last_rho = 0.0;
  for (int attempt = 1; attempt <= kMaxCrystalAttempts; ++attempt) {
    SymplecticTransform s = compose_crystal(config.mode_count, config.squeeze_strength, rng);
    EchoStateReport echo = echo_state_check(config.reflectivity, s);
    if (echo.pass) return s;
    last_rho = echo.spectral_radius;
  }
  std::ostringstream msg;
  msg << "no echo-state crystal found after " << kMaxCrystalAttempts << " attempts"
      << " (N=" << config.mode_count << ", R=" << config.reflectivity
      << ", r=" << config.squeeze_strength << ", last rho=" << last_rho << ")";
  throw std::runtime_error(msg.str());
}

Reservoir::Reservoir(const ReservoirConfig& config, SymplecticTransform crystal,
                     RunOptions options)
    : config_(config), crystal_(std::move(crystal)), options_(options),
      state_(vacuum_loop_state(config.mode_count)) {
  require_config(config_);
  if (crystal_.matrix.rows() != 2 * config_.mode_count) {
    throw std::invalid_argument("crystal dimension disagrees with the mode count");
  }
  EchoStateReport echo = echo_state_check(config_.reflectivity, crystal_);
  if (!echo.pass) {
    throw std::runtime_error("echo-state condition violated: rho(sqrt(R) S) = " +
                             std::to_string(echo.spectral_radius));
  }
}

Vec Reservoir::step(double sample, double noise_variance, Rng& rng) {
  double phi = encode_input(sample, config_.encoding_slope);
  CovarianceState in =
      squeezed_vacuum_covariance({config_.input_squeeze, phi}, config_.mode_count);

  LoopStepResult next = loop_step(state_, in, config_.reflectivity, crystal_);
  if (options_.validate_states) {
    if (!is_physical(next.state.covariance, 1e-9) || !is_physical(next.emitted, 1e-9)) {
      throw std::runtime_error("physicality violated at loop step " +
                               std::to_string(next.state.step_index));
    }
  }
  state_ = std::move(next.state);
  return add_readout_noise(extract_observables(next.emitted), noise_variance, rng);
}

Mat run_sequence(std::span<const double> inputs,
                 const ReservoirConfig& config,
                 const SymplecticTransform& crystal,
                 double noise_variance,
                 Rng& rng,
                 const RunOptions& options) {
  for (double v : inputs) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("run_sequence: non-finite input sample");
    }
  }
  Reservoir reservoir(config, crystal, options);
  Mat rows(static_cast<long>(inputs.size()), observable_count(config.mode_count));
  for (size_t k = 0; k < inputs.size(); ++k) {
    rows.row(static_cast<long>(k)) = reservoir.step(inputs[k], noise_variance, rng).transpose();
  }
  return rows;
}

}  // namespace qrc
