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

#include "qrc/symplectic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qrc {

namespace {

void require_positive_modes(int mode_count) {
  if (mode_count < 1) {
    throw std::invalid_argument("mode count must be at least 1, got " +
                                std::to_string(mode_count));
  }
}

}  // namespace

Mat symplectic_form(int mode_count) {
  require_positive_modes(mode_count);
  Mat omega = Mat::Zero(2 * mode_count, 2 * mode_count);
  for (int i = 0; i < mode_count; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

double symplectic_residual(const Mat& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw std::invalid_argument("symplectic candidates must be square with even size");
  }
  Mat omega = symplectic_form(static_cast<int>(s.rows()) / 2);
  return (s * omega * s.transpose() - omega).norm();
}

bool is_symplectic(const Mat& s, double tol) {
  return symplectic_residual(s) < tol;
}

Mat embed_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::invalid_argument("embed_unitary expects a square matrix");
  }
  const int n = static_cast<int>(u.rows());
  Mat s(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double x = u(i, j).real();
      double y = u(i, j).imag();
      // (x_i', p_i') = (X x - Y p, Y x + X p), rows/columns interleaved.
      s(2 * i, 2 * j) = x;
      s(2 * i, 2 * j + 1) = -y;
      s(2 * i + 1, 2 * j) = y;
      s(2 * i + 1, 2 * j + 1) = x;
    }
  }
  return s;
}

SymplecticTransform random_orthogonal_symplectic(int mode_count, Rng& rng) {
  require_positive_modes(mode_count);
  const int n = mode_count;

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    double mag = std::abs(d);
    // Gauge fix: strip the arbitrary phase the QR routine leaves on each
    // column. A zero diagonal entry has probability zero; leave the column
    // untouched if it happens.
    if (mag > 0.0) q.col(j) *= std::conj(d) / mag;
  }

  return SymplecticTransform{embed_unitary(q), 0.0};
}

SymplecticTransform crystal_from_factors(const Mat& u, double squeeze_strength, const Mat& v) {
  if (squeeze_strength < 0.0 || !std::isfinite(squeeze_strength)) {
    throw std::invalid_argument("squeeze strength must be finite and non-negative");
  }
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows() ||
      u.rows() % 2 != 0 || u.rows() == 0) {
    throw std::invalid_argument("crystal factors must be square, even-sized and matching");
  }
  const int n = static_cast<int>(u.rows()) / 2;
  Vec diag(2 * n);
  for (int i = 0; i < n; ++i) {
    diag[2 * i] = std::exp(squeeze_strength / 2);
    diag[2 * i + 1] = std::exp(-squeeze_strength / 2);
  }
  return SymplecticTransform{u * diag.asDiagonal() * v, squeeze_strength};
}

SymplecticTransform compose_crystal(int mode_count, double squeeze_strength, Rng& rng) {
  require_positive_modes(mode_count);
  Mat u = random_orthogonal_symplectic(mode_count, rng).matrix;
  Mat v = random_orthogonal_symplectic(mode_count, rng).matrix;
  return crystal_from_factors(u, squeeze_strength, v);
}

std::vector<double> singular_spectrum(const Mat& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("singular_spectrum: matrix has non-finite entries");
  }
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& sv = svd.singularValues();  // Eigen returns them descending
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double spectral_radius(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("spectral_radius expects a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("spectral_radius: matrix has non-finite entries");
  }
  Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qrc
