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

#include "qrc/readout.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qrc {

namespace {

struct SeriesStats {
  double mean = 0.0;
  double std = 0.0;
};

SeriesStats series_stats(const Vec& v, const char* label) {
  if (v.size() == 0) throw std::invalid_argument("empty series");
  SeriesStats s;
  s.mean = v.mean();
  s.std = std::sqrt((v.array() - s.mean).square().mean());
  if (!(s.std > 0.0))
    throw std::invalid_argument(std::string(label) + " series has zero variance");
  return s;
}

void require_same_length(const Vec& y, const Vec& target) {
  if (y.size() != target.size())
    throw std::invalid_argument("series length mismatch");
}

Mat require_nonempty(Mat m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("empty design matrix");
  return m;
}

}  // namespace

Mat build_design_matrix(const Mat& observables) {
  if (observables.rows() == 0) throw std::invalid_argument("no observable rows");
  Mat design(observables.rows(), observables.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(observables.cols()) = observables;
  return design;
}

Mat build_design_matrix(const std::vector<Vec>& observables) {
  if (observables.empty()) throw std::invalid_argument("no observable rows");
  const long cols = observables.front().size();
  Mat block(static_cast<long>(observables.size()), cols);
  for (std::size_t k = 0; k < observables.size(); ++k) {
    if (observables[k].size() != cols)
      throw std::invalid_argument("observable rows have inconsistent lengths");
    block.row(static_cast<long>(k)) = observables[k].transpose();
  }
  return build_design_matrix(block);
}

LeastSquaresSolver::LeastSquaresSolver(Mat design, double rel_threshold,
                                       double ridge)
    : design_rows_(design.rows()),
      design_cols_(design.cols()),
      ridge_(ridge),
      svd_(require_nonempty(std::move(design)),
           Eigen::ComputeThinU | Eigen::ComputeThinV) {
  if (!(rel_threshold >= 0.0) || !(ridge >= 0.0))
    throw std::invalid_argument("negative solver threshold");
  const double sigma_max = svd_.singularValues().size() > 0
                               ? svd_.singularValues()[0]
                               : 0.0;
  threshold_ = rel_threshold * sigma_max;
}

Vec LeastSquaresSolver::solve(const Vec& rhs) const {
  if (rhs.size() != design_rows_)
    throw std::invalid_argument("target length does not match design rows");
  const Vec& sigma = svd_.singularValues();
  Vec projected = svd_.matrixU().transpose() * rhs;
  for (long k = 0; k < sigma.size(); ++k) {
    if (sigma[k] > threshold_) {
      projected[k] *= ridge_ > 0.0
                          ? sigma[k] / (sigma[k] * sigma[k] + ridge_)
                          : 1.0 / sigma[k];
    } else {
      projected[k] = 0.0;
    }
  }
  return svd_.matrixV() * projected;
}

TrainedReadout LeastSquaresSolver::fit(const Vec& targets) const {
  SeriesStats stats = series_stats(targets, "target");
  Vec z = (targets.array() - stats.mean) / stats.std;
  Vec w = solve(z);
  TrainedReadout readout;
  readout.bias = w[0];
  readout.weights = w.tail(w.size() - 1);
  readout.target_mean = stats.mean;
  readout.target_std = stats.std;
  return readout;
}

TrainedReadout fit_readout(const Mat& design, const Vec& targets,
                           double rel_threshold, double ridge) {
  LeastSquaresSolver solver(design, rel_threshold, ridge);
  return solver.fit(targets);
}

Vec predict_normalized(const TrainedReadout& readout, const Mat& observables) {
  if (observables.cols() != readout.weights.size())
    throw std::invalid_argument("observable width does not match weights");
  return (observables * readout.weights).array() + readout.bias;
}

Vec predict(const TrainedReadout& readout, const Mat& observables) {
  Vec z = predict_normalized(readout, observables);
  return readout.target_mean + (readout.target_std * z.array());
}

Mat pseudoinverse(const Mat& m, double rel_threshold) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sigma = svd.singularValues();
  const double cut = sigma.size() > 0 ? rel_threshold * sigma[0] : 0.0;
  Vec inverted = Vec::Zero(sigma.size());
  for (long k = 0; k < sigma.size(); ++k)
    if (sigma[k] > cut) inverted[k] = 1.0 / sigma[k];
  return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
}

double normalized_mse(const Vec& y, const Vec& target) {
  require_same_length(y, target);
  SeriesStats ys = series_stats(y, "prediction");
  SeriesStats ts = series_stats(target, "target");
  auto zy = (y.array() - ys.mean) / ys.std;
  auto zt = (target.array() - ts.mean) / ts.std;
  return (zy - zt).square().mean();
}

double relative_mse(const Vec& y, const Vec& target) {
  require_same_length(y, target);
  SeriesStats ts = series_stats(target, "target");
  return (y - target).array().square().mean() / (ts.std * ts.std);
}

double capacity(const Vec& y, const Vec& target) {
  return std::max(0.0, 1.0 - normalized_mse(y, target));
}

}  // namespace qrc
