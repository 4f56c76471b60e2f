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

#ifndef QRC_READOUT_HPP
#define QRC_READOUT_HPP

#include <vector>

#include <Eigen/Dense>

#include "qrc/symplectic.hpp"

namespace qrc {

/// Prepends a column of ones: row k is (1, O_k).
Mat build_design_matrix(const Mat& observables);

/// Overload for row-wise collected observables; rejects ragged rows.
Mat build_design_matrix(const std::vector<Vec>& observables);

/// Linear readout trained against a z-scored target. `bias` and `weights`
/// act on raw observable vectors and produce predictions in z-scored target
/// units; `target_mean` / `target_std` undo the scaling.
struct TrainedReadout {
  double bias = 0.0;
  Vec weights;
  double target_mean = 0.0;
  double target_std = 1.0;
};

/// Minimum-norm least squares through a singular value decomposition,
/// factored once and reused across many target vectors.
///
/// Singular values below rel_threshold * sigma_max are truncated rather
/// than inverted, which keeps weights finite on rank-deficient designs.
/// `ridge` > 0 switches to Tikhonov-damped inversion of the same SVD.
class LeastSquaresSolver {
 public:
  explicit LeastSquaresSolver(Mat design, double rel_threshold = 1e-10,
                              double ridge = 0.0);

  /// Minimum-norm solution of design * w = rhs.
  Vec solve(const Vec& rhs) const;

  /// z-scores `targets`, solves for the weights, packs a TrainedReadout.
  /// The first design column must be the constant column.
  TrainedReadout fit(const Vec& targets) const;

  long rows() const { return design_rows_; }
  long cols() const { return design_cols_; }
  double rank_threshold() const { return threshold_; }

 private:
  long design_rows_ = 0;
  long design_cols_ = 0;
  double threshold_ = 0.0;
  double ridge_ = 0.0;
  Eigen::BDCSVD<Mat> svd_;
};

/// One-shot convenience wrapper around LeastSquaresSolver.
TrainedReadout fit_readout(const Mat& design, const Vec& targets,
                           double rel_threshold = 1e-10, double ridge = 0.0);

/// Readout response in z-scored target units, one value per observable row.
Vec predict_normalized(const TrainedReadout& readout, const Mat& observables);

/// Readout response mapped back to target units.
Vec predict(const TrainedReadout& readout, const Mat& observables);

/// Moore-Penrose pseudoinverse with relative singular value truncation.
Mat pseudoinverse(const Mat& m, double rel_threshold = 1e-10);

/// Mean squared error after z-scoring each series by its own mean and
/// (population) standard deviation. Invariant under independent positive
/// affine rescaling of either argument; y = -target gives exactly 4.
double normalized_mse(const Vec& y, const Vec& target);

/// Mean squared error in units of the target variance:
/// mean((y - target)^2) / var(target). Saturates near 1 when y carries no
/// information about the target.
double relative_mse(const Vec& y, const Vec& target);

/// Memory/processing capacity 1 - normalized_mse, clamped below at 0.
double capacity(const Vec& y, const Vec& target);

}  // namespace qrc

#endif  // QRC_READOUT_HPP
