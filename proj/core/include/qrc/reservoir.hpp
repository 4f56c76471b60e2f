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

#ifndef QRC_RESERVOIR_HPP
#define QRC_RESERVOIR_HPP

#include <cstdint>
#include <span>

#include "qrc/gaussian.hpp"
#include "qrc/symplectic.hpp"

namespace qrc {

/// Static parameters of one reservoir realization.
struct ReservoirConfig {
  int mode_count = 8;             // N
  double reflectivity = 0.75;     // beam-splitter R in [0, 1)
  double squeeze_strength = 0.0;  // crystal r >= 0
  double input_squeeze = 2.0;     // input pulse squeezing r_in
  double encoding_slope = 0.25;   // m in phi = m * pi * s
  std::uint64_t crystal_seed = 1;
};

/// Number of readout observables: N(3N+1)/2.
int observable_count(int mode_count);

/// Squeezing angle encoding one input sample: phi = m * pi * s.
double encode_input(double sample, double slope);

/// Covariance of the pulse circulating in the loop.
struct LoopState {
  CovarianceState covariance;
  long step_index = 0;
};

LoopState vacuum_loop_state(int mode_count);

struct LoopStepResult {
  LoopState state;           // loop covariance after the round trip
  CovarianceState emitted;   // covariance of the out-coupled pulse
};

/// One clock cycle of the loop:
///   Gamma_loop' = R * S Gamma_loop S^T + (1-R) * S Gamma_in S^T
///   Gamma_out   = (1-R) * Gamma_loop   + R * Gamma_in
/// The emitted pulse mixes the stored pulse with the fresh input at the
/// beam splitter before the crystal acts on what stays in the loop.
LoopStepResult loop_step(const LoopState& state,
                         const CovarianceState& input,
                         double reflectivity,
                         const SymplecticTransform& crystal);

/// Direct evaluation of the unrolled loop recursion,
///   Gamma_loop = (1-R) * S [ sum_{d=0}^{max_delay} A^d Gamma_in^{(k-d)} (A^d)^T ] S^T
/// with A = sqrt(R) S and history = (Gamma_in^{(0)}, ..., Gamma_in^{(k)}) in
/// chronological order. Cross-checks iterated loop_step: with
/// max_delay = len(history) - 1 the two agree exactly once the decayed
/// initial term A^{k+1} Gamma_0 (A^{k+1})^T is added.
CovarianceState expanded_covariance_oracle(std::span<const CovarianceState> history,
                                           double reflectivity,
                                           const SymplecticTransform& crystal,
                                           int max_delay);

/// Homodyne observable vector of an emitted pulse, length N(3N+1)/2:
/// first <x_i x_j> for i <= j, then <x_i^2 x_j^2> for i <= j, then
/// <x_i^3 x_j> for i < j, each block in row-major upper-triangular order.
Vec extract_observables(const CovarianceState& emitted);

/// Additive measurement noise: independent N(0, noise_variance) on every
/// entry. noise_variance = 0 returns the input unchanged without consuming
/// randomness.
Vec add_readout_noise(const Vec& observables, double noise_variance, Rng& rng);

struct EchoStateReport {
  double spectral_radius = 0.0;  // rho(sqrt(R) S)
  bool pass = false;             // rho < 1 - 1e-9
};

/// Fading-memory test of the one-step loop map A = sqrt(R) S.
EchoStateReport echo_state_check(double reflectivity, const SymplecticTransform& crystal);

/// Draws crystals until echo_state_check passes, at most 10000 attempts, then
/// throws. Consumes `rng` once per attempt. The budget is sized for strong
/// squeezing, where contractive draws can be rarer than one in a thousand.
SymplecticTransform draw_crystal(const ReservoirConfig& config, Rng& rng);

struct RunOptions {
  /// Re-verify physicality of the loop and emitted covariances after every
  /// step (uncertainty relation to 1e-9). Costs one Hermitian
  /// eigendecomposition per covariance.
  bool validate_states = true;
};

/// A reservoir with its loop state, ready to be driven sample by sample.
class Reservoir {
 public:
  Reservoir(const ReservoirConfig& config, SymplecticTransform crystal,
            RunOptions options = {});

  /// Feeds one sample: encode, mix, advance the loop, measure.
  /// Returns the noisy observable vector.
  Vec step(double sample, double noise_variance, Rng& rng);

  const LoopState& state() const { return state_; }
  const SymplecticTransform& crystal() const { return crystal_; }
  const ReservoirConfig& config() const { return config_; }

 private:
  ReservoirConfig config_;
  SymplecticTransform crystal_;
  RunOptions options_;
  LoopState state_;
};

/// Drives a fresh vacuum-initialized reservoir through `inputs` and stacks
/// the observable vectors as rows (len(inputs) x N(3N+1)/2).
Mat run_sequence(std::span<const double> inputs,
                 const ReservoirConfig& config,
                 const SymplecticTransform& crystal,
                 double noise_variance,
                 Rng& rng,
                 const RunOptions& options = {});

}  // namespace qrc

#endif  // QRC_RESERVOIR_HPP
