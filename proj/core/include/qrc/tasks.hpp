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

#ifndef QRC_TASKS_HPP
#define QRC_TASKS_HPP

#include <functional>

#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// I.i.d. samples from U(-1, 1).
Vec gen_uniform_inputs(long count, Rng& rng);

/// A target series aligned with its input series. values[k] is meaningful
/// only for valid_begin <= k < valid_end; entries outside are zero filler.
struct TargetSeries {
  Vec values;
  long valid_begin = 0;
  long valid_end = 0;
};

/// Linear memory target y_k = s_{k-delay}.
TargetSeries delay_target(const Vec& inputs, long delay);

/// NARMA10 target driven by u_k = 0.2 s_k:
///   y_k = 0.3 y_{k-1} + 0.05 y_{k-1} sum_{i=1}^{10} y_{k-i}
///         + 1.5 u_{k-1} u_{k-10} + 0.1
/// with y_0..y_9 = 0 and those first ten entries marked invalid. Throws if
/// the recursion leaves |y| <= 10.
TargetSeries narma10_target(const Vec& inputs);

/// One-step forecasting target y_k = s_{k+1}; the final step is invalid.
TargetSeries forecast_target(const Vec& inputs);

struct MackeyGlassParams {
  double delay = 17.0;         // tau
  double sample_period = 3.0;  // t_r, series is s(t0 + k t_r)
  double step = 0.1;           // integrator step h, <= 0.1; tau/h and t_r/h integral
  double transient = 1000.0;   // time units discarded before sampling
  double history = 1.0;        // constant value of s(t) for t <= 0
};

/// Mackey-Glass series  ds/dt = -0.1 s + 0.2 s(t - tau) / (1 + s(t - tau)^10),
/// integrated with fixed-step classical Runge-Kutta. The two half-step stage
/// evaluations of the delayed term use linear interpolation between grid
/// points.
Vec mackey_glass_series(const MackeyGlassParams& params, long sample_count);

/// Same, with the constant history drawn uniformly from [0.5, 1.5].
Vec mackey_glass_series(MackeyGlassParams params, long sample_count, Rng& rng);

/// Closed-loop continuation. Starting from the reservoir's current loop
/// state, each step feeds the previous prediction back as the next input
/// sample; `first_input` is the prediction that seeds the loop.
///
/// The drive stops early (diverged = true) if a prediction leaves
/// [-guard_limit, guard_limit]; guard_limit is conventionally 10x the
/// training target range.
struct DriveResult {
  Vec trajectory;
  bool diverged = false;
};

/// Generic driver used by tests to inject synthetic predictors.
DriveResult drive_closed_loop(const std::function<double(const Vec&)>& predictor,
                              Reservoir& reservoir,
                              double first_input,
                              long steps,
                              double noise_variance,
                              Rng& rng,
                              double guard_limit);

DriveResult autonomous_drive(const TrainedReadout& readout,
                             Reservoir& reservoir,
                             double first_input,
                             long steps,
                             double noise_variance,
                             Rng& rng,
                             double guard_limit);

/// First index where |predicted_k - truth_k| > threshold * std(truth);
/// returns len if the bound is never exceeded.
long valid_horizon(const Vec& predicted, const Vec& truth, double threshold);

}  // namespace qrc

#endif  // QRC_TASKS_HPP
