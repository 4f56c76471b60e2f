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

#ifndef QRC_SYMPLECTIC_HPP
#define QRC_SYMPLECTIC_HPP

#include <vector>

#include <Eigen/Dense>

#include "qrc/rng.hpp"

namespace qrc {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Quadrature convention used throughout: N modes are stored interleaved as
// (x_1, p_1, ..., x_N, p_N), commutators are scaled so that the vacuum
// variance of each quadrature is 1/2, and the symplectic form is the N-fold
// direct sum of [[0, 1], [-1, 0]].

/// Symplectic form Omega for `mode_count` modes (size 2N x 2N).
Mat symplectic_form(int mode_count);

/// Frobenius norm of S*Omega*S^T - Omega. Zero iff S is symplectic.
double symplectic_residual(const Mat& s);

bool is_symplectic(const Mat& s, double tol = 1e-10);

/// A Gaussian unitary on quadratures. `squeeze_strength` records the
/// single-pass squeezing parameter r the matrix was built from (0 for
/// passive transforms).
struct SymplecticTransform {
  Mat matrix;
  double squeeze_strength = 0.0;

  int mode_count() const { return static_cast<int>(matrix.rows()) / 2; }
};

/// Real 2N x 2N image of an N x N unitary X + iY under the interleaved
/// quadrature ordering. The result is orthogonal and symplectic.
Mat embed_unitary(const Eigen::MatrixXcd& u);

/// Haar-distributed orthogonal symplectic transform (a passive linear
/// optical network).
///
/// Sampling: complex Ginibre matrix -> QR -> each column of Q multiplied by
/// the conjugate phase of the matching diagonal entry of R. The phase fix
/// removes the bias of the numerical QR convention.
SymplecticTransform random_orthogonal_symplectic(int mode_count, Rng& rng);

/// Crystal transform U * D * V where D applies identical single-mode
/// squeezing diag(e^{r/2}, e^{-r/2}) to every mode. U and V are supplied by
/// the caller; tests pass identities to expose the bare squeezer.
SymplecticTransform crystal_from_factors(const Mat& u, double squeeze_strength, const Mat& v);

/// Crystal transform with Haar-random passive factors U, V.
/// Singular values of the result are e^{r/2} and e^{-r/2}, each N times.
SymplecticTransform compose_crystal(int mode_count, double squeeze_strength, Rng& rng);

/// Singular values in descending order.
std::vector<double> singular_spectrum(const Mat& m);

/// Largest eigenvalue modulus.
double spectral_radius(const Mat& m);

}  // namespace qrc

#endif  // QRC_SYMPLECTIC_HPP
