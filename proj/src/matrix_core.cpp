#include "glingam/matrix_core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "glingam/errors.hpp"

namespace glingam {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kRidgeScale = 1e-8;

std::vector<int> iota_ids(Eigen::Index p) {
  std::vector<int> ids(static_cast<std::size_t>(p));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

// Condition number of a symmetric matrix; +inf when not positive definite.
double spd_condition(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const auto& values = eig.eigenvalues();
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values)
    : DataMatrix(values, iota_ids(values.rows())) {}

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<int> variable_ids)
    : values_(std::move(values)), variable_ids_(std::move(variable_ids)) {
  if (values_.rows() < 1) throw InvalidInputError("data matrix needs at least one variable");
  if (values_.cols() < 2) throw InvalidInputError("data matrix needs at least two samples");
  if (static_cast<Eigen::Index>(variable_ids_.size()) != values_.rows())
    throw InvalidInputError("variable id count does not match row count");
  std::unordered_set<int> seen(variable_ids_.begin(), variable_ids_.end());
  if (seen.size() != variable_ids_.size()) throw InvalidInputError("variable ids must be distinct");
}

int DataMatrix::position_of(int id) const {
  const auto it = std::find(variable_ids_.begin(), variable_ids_.end(), id);
  if (it == variable_ids_.end())
    throw InvalidInputError("variable id " + std::to_string(id) + " not present");
  return static_cast<int>(it - variable_ids_.begin());
}

bool DataMatrix::contains(int id) const {
  return std::find(variable_ids_.begin(), variable_ids_.end(), id) != variable_ids_.end();
}

Eigen::MatrixXd DataMatrix::rows_of(std::span<const int> ids) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), values_.cols());
  for (std::size_t r = 0; r < ids.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = values_.row(position_of(ids[r]));
  return out;
}

DataMatrix DataMatrix::select(std::span<const int> ids) const {
  return DataMatrix(rows_of(ids), std::vector<int>(ids.begin(), ids.end()));
}

void DataMatrix::assign_rows(const DataMatrix& other) {
  if (other.n() != n()) throw InvalidInputError("sample counts differ");
  for (int r = 0; r < other.p(); ++r)
    values_.row(position_of(other.variable_ids()[static_cast<std::size_t>(r)])) =
        other.values().row(r);
}

DataMatrix center(const Eigen::MatrixXd& raw) {
  if (raw.cols() < 2) throw InvalidInputError("centering needs at least two samples");
  Eigen::MatrixXd centered = raw.colwise() - raw.rowwise().mean();
  return DataMatrix(std::move(centered));
}

DataMatrix center(const DataMatrix& data) {
  Eigen::MatrixXd centered = data.values().colwise() - data.values().rowwise().mean();
  return DataMatrix(std::move(centered), data.variable_ids());
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& centered) {
  const double n = static_cast<double>(centered.cols());
  Eigen::MatrixXd cov = (centered * centered.transpose()) / n;
  // Exact symmetry regardless of how the product was blocked.
  return (0.5 * (cov + cov.transpose())).eval();
}

Eigen::MatrixXd covariance(const DataMatrix& data) { return covariance(data.values()); }

CovarianceBlocks partition_covariance(const DataMatrix& data, const IndexSet& s) {
  const IndexSet sbar = complement_ids(data, s);
  const Eigen::MatrixXd xs = data.rows_of(s);
  const Eigen::MatrixXd xsbar = data.rows_of(sbar);
  const double n = static_cast<double>(data.n());
  return {covariance(xs), xs * xsbar.transpose() / n, covariance(xsbar)};
}

Eigen::MatrixXd regression_coefficients(const Eigen::MatrixXd& predictors,
                                        const Eigen::MatrixXd& targets) {
  if (predictors.cols() != targets.cols())
    throw InvalidInputError("predictors and targets have different sample counts");
  const double n = static_cast<double>(predictors.cols());
  Eigen::MatrixXd sigma_p = covariance(predictors);
  const Eigen::MatrixXd sigma_pt = predictors * targets.transpose() / n;

  if (spd_condition(sigma_p) > kMaxCondition) {
    const double trace = sigma_p.trace();
    if (!(trace > 0.0)) throw SingularityError("predictor covariance is zero");
    const double ridge = kRidgeScale * trace / static_cast<double>(sigma_p.rows());
    sigma_p.diagonal().array() += ridge;
    if (spd_condition(sigma_p) > kMaxCondition)
      throw SingularityError("predictor covariance is singular after ridge regularization");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_p);
  if (llt.info() != Eigen::Success) throw SingularityError("Cholesky factorization failed");
  // Sigma_P C^T = Sigma_PT
  return llt.solve(sigma_pt).transpose();
}

IndexSet complement_ids(const DataMatrix& data, const IndexSet& s) {
  IndexSet out;
  for (int id : data.variable_ids())
    if (std::find(s.begin(), s.end(), id) == s.end()) out.push_back(id);
  return out;
}

DataMatrix residualize(const DataMatrix& data, const IndexSet& s) {
  if (s.empty()) throw InvalidInputError("regressor set is empty");
  for (int id : s)
    if (!data.contains(id)) throw InvalidInputError("regressor id " + std::to_string(id) + " not in data");
  IndexSet sbar = complement_ids(data, s);
  if (sbar.empty()) throw InvalidInputError("regressor set covers every variable");

  const Eigen::MatrixXd xs = data.rows_of(s);
  const Eigen::MatrixXd xsbar = data.rows_of(sbar);
  const Eigen::MatrixXd coef = regression_coefficients(xs, xsbar);
  Eigen::MatrixXd resid = xsbar - coef * xs;
  return DataMatrix(std::move(resid), std::move(sbar));
}

}  // namespace glingam
