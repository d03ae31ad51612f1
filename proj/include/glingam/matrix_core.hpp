#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace glingam {

/// Sorted list of variable ids.
using IndexSet = std::vector<int>;

/// p x n sample matrix: one row per variable, one column per sample.
///
/// Rows carry the id of the original variable they describe, so a matrix
/// restricted to a subset (or overwritten by residuals) still reports which
/// variables it holds.
class DataMatrix {
 public:
  /// Rows are labelled 0..p-1.
  explicit DataMatrix(Eigen::MatrixXd values);
  DataMatrix(Eigen::MatrixXd values, std::vector<int> variable_ids);

  int p() const { return static_cast<int>(values_.rows()); }
  int n() const { return static_cast<int>(values_.cols()); }

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<int>& variable_ids() const { return variable_ids_; }

  /// Row position of a variable id; throws InvalidInputError if absent.
  int position_of(int id) const;
  bool contains(int id) const;

  /// Rows for the given ids, in the order given.
  DataMatrix select(std::span<const int> ids) const;
  Eigen::MatrixXd rows_of(std::span<const int> ids) const;

  /// Overwrites the rows of `other`'s ids with `other`'s values.
  void assign_rows(const DataMatrix& other);

 private:
  Eigen::MatrixXd values_;
  std::vector<int> variable_ids_;
};

/// Partition of the sample covariance into an S block and its complement.
struct CovarianceBlocks {
  Eigen::MatrixXd sigma_s;
  Eigen::MatrixXd sigma_s_sbar;
  Eigen::MatrixXd sigma_sbar;
};

/// Subtracts each row mean. Requires at least two samples.
DataMatrix center(const Eigen::MatrixXd& raw);
DataMatrix center(const DataMatrix& data);

/// (1/n) X X^T of an already-centered matrix.
Eigen::MatrixXd covariance(const DataMatrix& data);
Eigen::MatrixXd covariance(const Eigen::MatrixXd& centered);

CovarianceBlocks partition_covariance(const DataMatrix& data, const IndexSet& s);

/// Least-squares coefficients C (targets x predictors) of targets regressed on
/// predictors, both centered with samples as columns.
///
/// Sigma_P is factorized by Cholesky. When its condition number exceeds 1e12 a
/// ridge of 1e-8 * trace / dim is added; SingularityError if that is not enough.
Eigen::MatrixXd regression_coefficients(const Eigen::MatrixXd& predictors,
                                        const Eigen::MatrixXd& targets);

/// Residuals of the variables outside `s` regressed on those in `s`.
/// Output rows keep the complement's ids in their original order.
DataMatrix residualize(const DataMatrix& data, const IndexSet& s);

/// Variable ids of `data` not in `s`, preserving row order.
IndexSet complement_ids(const DataMatrix& data, const IndexSet& s);

}  // namespace glingam
