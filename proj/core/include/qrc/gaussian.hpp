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

#ifndef QRC_GAUSSIAN_HPP
#define QRC_GAUSSIAN_HPP

#include <vector>

#include "qrc/symplectic.hpp"

namespace qrc {

/// Variance of each quadrature in the vacuum state.
inline constexpr double kVacuumVariance = 0.5;

/// Covariance matrix of a zero-mean Gaussian state, interleaved ordering.
struct CovarianceState {
  Mat matrix;

  int mode_count() const { return static_cast<int>(matrix.rows()) / 2; }
};

CovarianceState vacuum_state(int mode_count);

/// Smallest eigenvalue of the Hermitian matrix Gamma + (i/2) Omega.
/// Physical states are >= 0 up to rounding.
double physicality_margin(const CovarianceState& state);

/// Uncertainty-principle check: Gamma + (i/2) Omega >= -tol.
bool is_physical(const CovarianceState& state, double tol = 1e-9);

/// Symplectic (Williamson) eigenvalues, ascending. Each is >= 1/2 for a
/// physical state, with equality on pure modes.
std::vector<double> symplectic_eigenvalues(const CovarianceState& state);

/// Parameters of one squeezed-vacuum input pulse.
struct SqueezedInputSpec {
  double squeeze_strength = 0.0;  // r >= 0
  double phase = 0.0;             // squeezing angle, pi-periodic
};

/// N uncorrelated copies of a squeezed vacuum: each mode block is
/// (1/2) R(phi) diag(e^{-r}, e^{+r}) R(phi)^T, so phase 0 squeezes x.
CovarianceState squeezed_vacuum_covariance(const SqueezedInputSpec& spec, int mode_count);

/// Gaussian fourth moments obtained from second moments by Wick pairing.
/// m22(i, j) = <x_i^2 x_j^2>, m31(i, j) = <x_i^3 x_j>.
struct FourthMoments {
  Mat m22;
  Mat m31;
};

/// Wick pairing of a zero-mean Gaussian x-quadrature covariance:
///   <x_i^2 x_j^2> = <x_i^2><x_j^2> + 2<x_i x_j>^2
///   <x_i^3 x_j>   = 3 <x_i^2><x_i x_j>
/// The i = j diagonal of both tables reduces to <x_i^4> = 3<x_i^2>^2.
FourthMoments wick_fourth_moments(const Mat& xx_covariance);

}  // namespace qrc

#endif  // QRC_GAUSSIAN_HPP
