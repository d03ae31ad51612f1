#pragma once

#include <Eigen/Dense>

namespace glingam {

struct MiConfig {
  /// Neighbor count of the kNN estimator.
  int k = 1;
  /// Worker threads for the neighbor counts; 0 picks hardware concurrency.
  /// The estimate is bit-identical for any value.
  int threads = 0;
};

/// Kraskov-Stoegbauer-Grassberger estimate (first variant) of the mutual
/// information, in nats, between X (dX x n) and Y (dY x n).
///
/// Coordinates are standardized to unit variance and receive a 1e-10
/// deterministic jitter keyed to sample content, so the estimate does not
/// depend on sample order, swapping X and Y, or positive rescaling.
/// Distances use the max-norm; neighbor search is exact brute force.
/// The result may be slightly negative for independent samples.
double mutual_information(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const MiConfig& cfg);

/// round(0.05 * n), kept within [1, n - 1].
int default_k(int n);

}  // namespace glingam
