#include "glingam/group_search.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "glingam/errors.hpp"
#include "glingam/strength_estimation.hpp"

namespace glingam {

namespace {

constexpr int kMaxEnumerableSize = 30;

struct Recursion {
  const SearchConfig& cfg;
  const PairOrderList& constraints;
  const Scorer& scorer;
  ScoreTrace* trace;

  BlockOrdering run(DataMatrix& working, const IndexSet& u, int depth) const {
    BlockOrdering out;
    if (u.size() == 1) {
      out.append(u);
      return out;
    }
    const ExogenousChoice choice = find_most_exogenous(working, u, cfg, constraints, scorer, trace, depth);
    if (choice.subset.empty() || !(choice.score <= cfg.delta)) {
      out.append(u);
      return out;
    }
    const IndexSet rest = complement_ids(working.select(u), choice.subset);
    working.assign_rows(residualize(working.select(u), choice.subset));
    out.append(run(working, choice.subset, depth + 1));
    out.append(run(working, rest, depth + 1));
    return out;
  }
};

IndexSet sorted_unique(IndexSet u) {
  std::sort(u.begin(), u.end());
  if (std::adjacent_find(u.begin(), u.end()) != u.end())
    throw InvalidInputError("variable set contains duplicates");
  return u;
}

}  // namespace

double independence_score(const DataMatrix& data, const IndexSet& s, const MiConfig& mi) {
  const DataMatrix resid = residualize(data, s);
  return mutual_information(data.rows_of(s), resid.values(), mi);
}

std::vector<IndexSet> enumerate_candidates(const IndexSet& u_in, const PairOrderList& constraints) {
  const IndexSet u = sorted_unique(u_in);
  const int size = static_cast<int>(u.size());
  if (size > kMaxEnumerableSize) throw ProblemTooLargeError("too many variables to enumerate subsets");
  if (size < 2) return {};

  auto local = [&](int id) {
    const auto it = std::lower_bound(u.begin(), u.end(), id);
    return (it != u.end() && *it == id) ? static_cast<int>(it - u.begin()) : -1;
  };
  std::vector<std::pair<int, int>> local_pairs;
  for (const auto& [j1, j2] : constraints.pairs()) {
    const int b1 = local(j1);
    const int b2 = local(j2);
    if (b1 >= 0 && b2 >= 0) local_pairs.emplace_back(b1, b2);
  }

  std::vector<IndexSet> out;
  const std::uint32_t full = (std::uint32_t{1} << size) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    bool ok = true;
    for (const auto& [b1, b2] : local_pairs)
      if ((mask >> b2 & 1U) && !(mask >> b1 & 1U)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    IndexSet s;
    for (int b = 0; b < size; ++b)
      if (mask >> b & 1U) s.push_back(u[static_cast<std::size_t>(b)]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

ExogenousChoice find_most_exogenous(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                                    const PairOrderList& constraints, ScoreTrace* trace) {
  const Scorer scorer = [&cfg](const DataMatrix& d, const IndexSet& s) {
    return independence_score(d, s, cfg.mi);
  };
  return find_most_exogenous(data, u, cfg, constraints, scorer, trace, 0);
}

ExogenousChoice find_most_exogenous(const DataMatrix& data, const IndexSet& u_in, const SearchConfig& cfg,
                                    const PairOrderList& constraints, const Scorer& scorer,
                                    ScoreTrace* trace, int depth) {
  const IndexSet u = sorted_unique(u_in);
  if (u.size() < 2) throw InvalidInputError("exogenous search needs at least two variables");
  if (static_cast<int>(u.size()) > cfg.max_exact_p)
    throw ProblemTooLargeError("exact search is limited to " + std::to_string(cfg.max_exact_p) + " variables (got " +
                               std::to_string(u.size()) + "); use the large-scale estimator");
  const DataMatrix sub = data.select(u);
  ExogenousChoice best;
  for (const IndexSet& s : enumerate_candidates(u, constraints)) {
    const double score = scorer(sub, s);
    if (trace) trace->push_back({depth, s, score});
    // Strict comparison keeps the earliest candidate on ties.
    if (best.subset.empty() || score < best.score) best = {s, score};
  }
  return best;
}

BlockOrdering group_search(const DataMatrix& data, const IndexSet& u, const SearchConfig& cfg,
                           const PairOrderList& constraints, ScoreTrace* trace) {
  const Scorer scorer = [&cfg](const DataMatrix& d, const IndexSet& s) {
    return independence_score(d, s, cfg.mi);
  };
  return group_search(data, u, cfg, constraints, scorer, trace);
}

BlockOrdering group_search(const DataMatrix& data, const IndexSet& u_in, const SearchConfig& cfg,
                           const PairOrderList& constraints, const Scorer& scorer, ScoreTrace* trace) {
  const IndexSet u = sorted_unique(u_in);
  if (u.empty()) throw InvalidInputError("group search needs at least one variable");
  DataMatrix working = data.select(u);
  return Recursion{cfg, constraints, scorer, trace}.run(working, u, 0);
}

FitResult fit(const DataMatrix& data, const SearchConfig& cfg) {
  if (data.p() > cfg.max_exact_p)
    throw ProblemTooLargeError("exact search is limited to " + std::to_string(cfg.max_exact_p) + " variables (got " +
                               std::to_string(data.p()) + "); use the large-scale estimator");
  ScoreTrace trace;
  const BlockOrdering ordering = group_search(data, data.variable_ids(), cfg, PairOrderList{}, &trace);
  StrengthEstimate strengths = estimate_strengths(data, ordering);
  return FitResult{to_model(strengths, ordering), std::move(strengths.within_block_cov), std::move(trace)};
}

}  // namespace glingam
