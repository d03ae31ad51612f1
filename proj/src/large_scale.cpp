#include "glingam/large_scale.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "glingam/errors.hpp"
#include "glingam/strength_estimation.hpp"

namespace glingam {

namespace {

IndexSet draw_subset(std::vector<int>& pool, int h, std::mt19937_64& rng) {
  // Partial Fisher-Yates over the pool's first h slots.
  for (int i = 0; i < h; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  IndexSet out(pool.begin(), pool.begin() + h);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Covering random_covering(int p, int h, int count, std::uint64_t seed) {
  if (h < 2 || h > p) throw InvalidInputError("covering cardinality must satisfy 2 <= h <= p");
  if (count < 1) throw InvalidInputError("covering needs at least one subset");
  std::mt19937_64 rng(seed);
  std::vector<int> pool(static_cast<std::size_t>(p));
  std::iota(pool.begin(), pool.end(), 0);

  Covering out;
  std::vector<bool> covered(static_cast<std::size_t>(p), false);
  for (int i = 0; i < count; ++i) {
    out.subsets.push_back(draw_subset(pool, h, rng));
    for (int id : out.subsets.back()) covered[id] = true;
  }

  std::vector<int> missing;
  for (int id = 0; id < p; ++id)
    if (!covered[id]) missing.push_back(id);
  std::shuffle(missing.begin(), missing.end(), rng);
  for (std::size_t start = 0; start < missing.size(); start += static_cast<std::size_t>(h)) {
    const std::size_t stop = std::min(missing.size(), start + static_cast<std::size_t>(h));
    IndexSet subset(missing.begin() + static_cast<std::ptrdiff_t>(start),
                    missing.begin() + static_cast<std::ptrdiff_t>(stop));
    std::vector<int> others;
    for (int id = 0; id < p; ++id)
      if (std::find(subset.begin(), subset.end(), id) == subset.end()) others.push_back(id);
    const int pad = h - static_cast<int>(subset.size());
    const IndexSet extra = draw_subset(others, pad, rng);
    subset.insert(subset.end(), extra.begin(), extra.end());
    std::sort(subset.begin(), subset.end());
    out.subsets.push_back(std::move(subset));
  }
  return out;
}

LargeFitResult fit_large(const DataMatrix& data, const LargeScaleConfig& large, const SearchConfig& cfg) {
  const Scorer scorer = [&cfg](const DataMatrix& d, const IndexSet& s) {
    return independence_score(d, s, cfg.mi);
  };
  return fit_large(data, large, cfg, scorer);
}

LargeFitResult fit_large(const DataMatrix& data, const LargeScaleConfig& large, const SearchConfig& cfg,
                         const Scorer& scorer) {
  const int p = data.p();
  if (large.h > std::min(p, cfg.max_exact_p))
    throw InvalidInputError("covering cardinality " + std::to_string(large.h) +
                            " exceeds min(p, max_exact_p) = " + std::to_string(std::min(p, cfg.max_exact_p)));

  Covering covering = random_covering(p, large.h, large.subsets, large.seed);
  PairOrderList orders;
  ScoreTrace trace;
  for (const IndexSet& subset : covering.subsets) {
    const DataMatrix sub = data.select(subset);
    const BlockOrdering local = group_search(sub, subset, cfg, orders, scorer, &trace);
    orders = merge_orders(std::move(orders), extract_pairs(local));
  }

  const BlockOrdering ordering = build_block_order(orders, p);
  StrengthEstimate strengths = estimate_strengths(data, ordering);
  FitResult result{to_model(strengths, ordering), std::move(strengths.within_block_cov), std::move(trace)};
  return {std::move(result), std::move(covering), std::move(orders)};
}

}  // namespace glingam
