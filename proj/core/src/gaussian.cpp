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

#include "qrc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qrc {

namespace {

void require_covariance_shape(const CovarianceState& state) {
  if (state.matrix.rows() != state.matrix.cols() || state.matrix.rows() == 0 ||
      state.matrix.rows() % 2 != 0) {
    throw std::invalid_argument("covariance matrices must be square with even size");
  }
}

}  // namespace

CovarianceState vacuum_state(int mode_count) {
  if (mode_count < 1) {
    throw std::invalid_argument("mode count must be at least 1");
  }
  return CovarianceState{kVacuumVariance * Mat::Identity(2 * mode_count, 2 * mode_count)};
}

double physicality_margin(const CovarianceState& state) {
  require_covariance_shape(state);
  const int dim = static_cast<int>(state.matrix.rows());
  Mat omega = symplectic_form(dim / 2);
  Eigen::MatrixXcd h = state.matrix.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_physical(const CovarianceState& state, double tol) {
  return physicality_margin(state) >= -tol;
}

std::vector<double> symplectic_eigenvalues(const CovarianceState& state) {
  require_covariance_shape(state);
  const int dim = static_cast<int>(state.matrix.rows());
  Mat omega = symplectic_form(dim / 2);
  // Eigenvalues of Omega * Gamma come in pairs +/- i nu with nu > 0 for a
  // positive definite Gamma; the moduli repeat each symplectic eigenvalue
  // twice.
  Eigen::EigenSolver<Mat> es(omega * state.matrix, /*computeEigenvectors=*/false);
  std::vector<double> moduli(dim);
  for (int i = 0; i < dim; ++i) moduli[i] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> nus(dim / 2);
  for (int i = 0; i < dim / 2; ++i) {
    nus[i] = 0.5 * (moduli[2 * i] + moduli[2 * i + 1]);
  }
  return nus;
}

CovarianceState squeezed_vacuum_covariance(const SqueezedInputSpec& spec, int mode_count) {
  if (mode_count < 1) {
    throw std::invalid_argument("mode count must be at least 1");
  }
  if (spec.squeeze_strength < 0.0 || !std::isfinite(spec.squeeze_strength)) {
    throw std::invalid_argument("input squeeze strength must be finite and non-negative");
  }
  if (!std::isfinite(spec.phase)) {
    throw std::invalid_argument("squeezing phase must be finite");
  }

  Mat rot(2, 2);
  const double c = std::cos(spec.phase), s = std::sin(spec.phase);
  rot << c, -s,
         s, c;
  Mat block = kVacuumVariance * rot *
              Vec{{std::exp(-spec.squeeze_strength), std::exp(spec.squeeze_strength)}}.asDiagonal() *
              rot.transpose();

  Mat cov = Mat::Zero(2 * mode_count, 2 * mode_count);
  for (int i = 0; i < mode_count; ++i) {
    cov.block(2 * i, 2 * i, 2, 2) = block;
  }
  return CovarianceState{cov};
}

FourthMoments wick_fourth_moments(const Mat& xx_covariance) {
  const int n = static_cast<int>(xx_covariance.rows());
  if (n == 0 || xx_covariance.cols() != n) {
    throw std::invalid_argument("wick_fourth_moments expects a square covariance");
  }
  if (!xx_covariance.allFinite()) {
    throw std::invalid_argument("wick_fourth_moments: non-finite covariance entry");
  }
  double scale = std::max(1.0, xx_covariance.cwiseAbs().maxCoeff());
  if ((xx_covariance - xx_covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("wick_fourth_moments: covariance is not symmetric");
  }
  for (int i = 0; i < n; ++i) {
    if (xx_covariance(i, i) < 0.0) {
      throw std::invalid_argument("wick_fourth_moments: negative variance on the diagonal");
    }
  }

  FourthMoments out;
  out.m22.resize(n, n);
  out.m31.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double gii = xx_covariance(i, i);
      const double gjj = xx_covariance(j, j);
      const double gij = xx_covariance(i, j);
      out.m22(i, j) = gii * gjj + 2.0 * gij * gij;
      out.m31(i, j) = 3.0 * gii * gij;
    }
  }
  return out;
}

}  // namespace qrc
