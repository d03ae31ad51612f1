#pragma once

#include <cstdint>
#include <vector>

#include "glingam/group_search.hpp"
#include "glingam/matrix_core.hpp"
#include "glingam/pair_order.hpp"

namespace glingam {

/// Subsets of size h whose union is every variable.
struct Covering {
  std::vector<IndexSet> subsets;
};

/// `count` uniform size-h draws, then extra subsets holding any variables the
/// draws missed, each padded with uniformly chosen others up to size h.
Covering random_covering(int p, int h, int count, std::uint64_t seed);

struct LargeScaleConfig {
  int h = 5;
  int subsets = 50;
  std::uint64_t seed = 0;
};

struct LargeFitResult {
  FitResult fit;
  Covering covering;
  PairOrderList orders;
};

/// Exact search on each covering subset in turn, using the original data
/// rows and the precedence pairs gathered so far as candidate constraints;
/// the merged pairs give the global block order.
LargeFitResult fit_large(const DataMatrix& data, const LargeScaleConfig& large, const SearchConfig& cfg);
LargeFitResult fit_large(const DataMatrix& data, const LargeScaleConfig& large, const SearchConfig& cfg,
                         const Scorer& scorer);

}  // namespace glingam
