#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "glingam/matrix_core.hpp"
#include "glingam/mi_estimator.hpp"
#include "glingam/model.hpp"
#include "glingam/pair_order.hpp"

namespace glingam {

inline constexpr double kDagDelta = std::numeric_limits<double>::infinity();

struct SearchConfig {
  /// Split threshold on the independence score; +inf forces singleton blocks.
  double delta = 1.0e-2;
  MiConfig mi;
  /// Largest variable set the exhaustive subset enumeration accepts.
  int max_exact_p = 15;
};

struct ScoreEntry {
  int depth = 0;
  IndexSet subset;
  double score = 0.0;
};
using ScoreTrace = std::vector<ScoreEntry>;

/// Independence score of a candidate exogenous set S against the residuals
/// of the remaining variables of `data`. Smaller means more exogenous.
using Scorer = std::function<double(const DataMatrix& data, const IndexSet& s)>;

/// Mutual information between x_S and the residuals of the other rows of
/// `data` regressed on x_S.
double independence_score(const DataMatrix& data, const IndexSet& s, const MiConfig& mi);

/// Non-empty proper subsets of U, ordered by size then lexicographically,
/// skipping any subset that contains j2 while leaving j1 outside it for a
/// constraint pair (j1, j2).
std::vector<IndexSet> enumerate_candidates(const IndexSet& u, const PairOrderList& constraints);

struct ExogenousChoice {
  IndexSet subset;
  double score = std::numeric_limits<double>::infinity();
};

/// Candidate of U with the smallest score; ties go to the earlier candidate
/// in enumeration order. Returns an empty subset if no candidate survives
/// the constraints. Throws ProblemTooLargeError when |U| > max_exact_p.
ExogenousChoice find_most_exogenous(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                                    const PairOrderList& constraints, ScoreTrace* trace = nullptr);
ExogenousChoice find_most_exogenous(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                                    const PairOrderList& constraints, const Scorer& scorer,
                                    ScoreTrace* trace = nullptr, int depth = 0);

/// Recursive block ordering of U. Rows of U in `data` are taken as the
/// current working data; the split set keeps its rows and the remainder is
/// replaced by its residuals before recursing.
BlockOrdering group_search(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                           const PairOrderList& constraints, ScoreTrace* trace = nullptr);
BlockOrdering group_search(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                           const PairOrderList& constraints, const Scorer& scorer,
                           ScoreTrace* trace = nullptr);

struct FitResult {
  ChainGraphModel model;
  /// Residual covariance of each block's variables after removing earlier
  /// blocks, indexed like model.ordering().blocks().
  std::vector<Eigen::MatrixXd> within_block_cov;
  ScoreTrace trace;
};

/// Exact estimation over all variables of `data` (ids must be 0..p-1).
FitResult fit(const DataMatrix& data, const SearchConfig& cfg);

}  // namespace glingam
