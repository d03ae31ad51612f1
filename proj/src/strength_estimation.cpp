#include "glingam/strength_estimation.hpp"

#include <cmath>

#include "glingam/errors.hpp"

namespace glingam {

StrengthEstimate estimate_strengths(const DataMatrix& data, const BlockOrdering& ordering) {
  if (!ordering.is_partition_of(data.p()))
    throw InvalidInputError("ordering does not partition the data variables");
  StrengthEstimate out;
  out.b = Eigen::MatrixXd::Zero(data.p(), data.p());

  IndexSet predecessors;
  for (const IndexSet& block : ordering.blocks()) {
    const Eigen::MatrixXd targets = data.rows_of(block);
    if (predecessors.empty()) {
      out.within_block_cov.push_back(covariance(targets));
    } else {
      const Eigen::MatrixXd preds = data.rows_of(predecessors);
      const Eigen::MatrixXd coef = regression_coefficients(preds, targets);
      for (std::size_t r = 0; r < block.size(); ++r)
        for (std::size_t c = 0; c < predecessors.size(); ++c)
          out.b(block[r], predecessors[c]) =
              coef(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      out.within_block_cov.push_back(covariance(Eigen::MatrixXd(targets - coef * preds)));
    }
    predecessors.insert(predecessors.end(), block.begin(), block.end());
  }
  return out;
}

ChainGraphModel to_model(const StrengthEstimate& estimate, const BlockOrdering& ordering) {
  Eigen::VectorXd noise_std(estimate.b.rows());
  for (int a = 0; a < ordering.size(); ++a)
    for (std::size_t r = 0; r < ordering[a].size(); ++r)
      noise_std(ordering[a][r]) = std::sqrt(
          estimate.within_block_cov[static_cast<std::size_t>(a)](static_cast<Eigen::Index>(r),
                                                                  static_cast<Eigen::Index>(r)));
  return ChainGraphModel(estimate.b, ordering, noise_std);
}

}  // namespace glingam
