#pragma once

#include <utility>
#include <vector>

#include "glingam/model.hpp"

namespace glingam {

/// Number of true edges j -> i (b_ij != 0) whose source sits in a strictly
/// later estimated block than their target. Same-block pairs never count.
int order_error_count(const ChainGraphModel& truth, const BlockOrdering& estimated);

/// Fraction of true edges j -> i with j in a strictly earlier estimated block
/// than i. 1.0 when the truth has no edges.
double edge_order_consistency(const ChainGraphModel& truth, const BlockOrdering& estimated);

struct ScatterPair {
  int i = 0;
  int j = 0;
  double true_b = 0.0;
  double est_b = 0.0;
};

/// One pair per ordered (i, j) with i != j, row-major.
std::vector<ScatterPair> scatter_pairs(const ChainGraphModel& truth, const ChainGraphModel& estimated);

struct ScatterFit {
  double slope = 0.0;      // least squares of est_b on true_b, with intercept
  double intercept = 0.0;
  double correlation = 0.0;
};

ScatterFit fit_scatter(const std::vector<ScatterPair>& pairs);

double median_errors(std::vector<int> trials);

}  // namespace glingam
