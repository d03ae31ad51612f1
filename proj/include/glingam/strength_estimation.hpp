#pragma once

#include <vector>

#include <Eigen/Dense>

#include "glingam/matrix_core.hpp"
#include "glingam/model.hpp"

namespace glingam {

struct StrengthEstimate {
  /// Row i holds the least-squares coefficients of x_i on every variable of
  /// strictly earlier blocks; all other entries are exactly zero.
  Eigen::MatrixXd b;
  /// Per block: covariance of its variables' residuals after regression on
  /// earlier blocks (plain covariance for the first block).
  std::vector<Eigen::MatrixXd> within_block_cov;
};

StrengthEstimate estimate_strengths(const DataMatrix& data, const BlockOrdering& ordering);

/// Model with the estimated B and noise_std from the residual variances.
ChainGraphModel to_model(const StrengthEstimate& estimate, const BlockOrdering& ordering);

}  // namespace glingam
