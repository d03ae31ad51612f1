#include "glingam/eval.hpp"

#include <algorithm>
#include <cmath>

#include "glingam/errors.hpp"

namespace glingam {

namespace {

std::vector<int> estimated_levels(const ChainGraphModel& truth, const BlockOrdering& estimated) {
  if (!estimated.is_partition_of(truth.p()))
    throw InvalidInputError("estimated ordering does not cover the same variables as the truth");
  return estimated.block_of();
}

}  // namespace

int order_error_count(const ChainGraphModel& truth, const BlockOrdering& estimated) {
  const std::vector<int> level = estimated_levels(truth, estimated);
  const auto& b = truth.adjacency();
  int errors = 0;
  for (int i = 0; i < truth.p(); ++i)
    for (int j = 0; j < truth.p(); ++j)
      if (b(i, j) != 0.0 && level[static_cast<std::size_t>(i)] < level[static_cast<std::size_t>(j)]) ++errors;
  return errors;
}

double edge_order_consistency(const ChainGraphModel& truth, const BlockOrdering& estimated) {
  const std::vector<int> level = estimated_levels(truth, estimated);
  const auto& b = truth.adjacency();
  int edges = 0;
  int consistent = 0;
  for (int i = 0; i < truth.p(); ++i)
    for (int j = 0; j < truth.p(); ++j) {
      if (i == j || b(i, j) == 0.0) continue;
      ++edges;
      consistent += level[static_cast<std::size_t>(j)] < level[static_cast<std::size_t>(i)];
    }
  return edges == 0 ? 1.0 : static_cast<double>(consistent) / edges;
}

std::vector<ScatterPair> scatter_pairs(const ChainGraphModel& truth, const ChainGraphModel& estimated) {
  if (truth.p() != estimated.p()) throw InvalidInputError("models have different dimensions");
  std::vector<ScatterPair> out;
  for (int i = 0; i < truth.p(); ++i)
    for (int j = 0; j < truth.p(); ++j)
      if (i != j) out.push_back({i, j, truth.adjacency()(i, j), estimated.adjacency()(i, j)});
  return out;
}

ScatterFit fit_scatter(const std::vector<ScatterPair>& pairs) {
  if (pairs.size() < 2) throw InvalidInputError("need at least two scatter pairs");
  const double n = static_cast<double>(pairs.size());
  double mt = 0.0, me = 0.0;
  for (const auto& pr : pairs) {
    mt += pr.true_b;
    me += pr.est_b;
  }
  mt /= n;
  me /= n;
  double stt = 0.0, see = 0.0, ste = 0.0;
  for (const auto& pr : pairs) {
    stt += (pr.true_b - mt) * (pr.true_b - mt);
    see += (pr.est_b - me) * (pr.est_b - me);
    ste += (pr.true_b - mt) * (pr.est_b - me);
  }
  ScatterFit fit;
  if (stt > 0.0) {
    fit.slope = ste / stt;
    fit.intercept = me - fit.slope * mt;
  }
  if (stt > 0.0 && see > 0.0) fit.correlation = ste / std::sqrt(stt * see);
  return fit;
}

double median_errors(std::vector<int> trials) {
  if (trials.empty()) throw InvalidInputError("median of an empty list");
  std::sort(trials.begin(), trials.end());
  const std::size_t mid = trials.size() / 2;
  if (trials.size() % 2 == 1) return trials[mid];
  return 0.5 * (trials[mid - 1] + trials[mid]);
}

}  // namespace glingam
